#pragma once

#include "cobit/types.hpp"

#include <array>
#include <vector>

namespace cobit::gates {

Mat identity(int d);
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat hadamard();
Mat phase_s();

// Two-qubit gates; the first tensor factor is the control where applicable.
Mat cnot();
Mat cz();
Mat swap_gate();

// {I, X, Y, Z}
std::array<Mat, 4> paulis();

Mat kron(const Mat& a, const Mat& b);

// Block-diagonal controlled unitary: control value k selects blocks[k].
Mat controlled(const std::vector<Mat>& blocks);

}  // namespace cobit::gates
