#pragma once

#include <vector>

#include "cobit/types.hpp"

namespace cobit::capacity {

// A labeled mixture of bipartite pure states on C^{dim_a} (x) C^{dim_b},
// Alice's factor most significant.
struct Ensemble {
  int dim_a = 2;
  int dim_b = 2;
  std::vector<double> probs;
  std::vector<Vec> states;
};

void validate_ensemble(const Ensemble& e);

// Bob's reduced density matrix of one member.
Mat bob_reduction(const Ensemble& e, std::size_t i);

// Holevo information of Bob's reduced ensemble:
// S(sum_i p_i rho_B,i) - sum_i p_i S(rho_B,i).
double holevo_chi_bob(const Ensemble& e);

// Mean entanglement across the A|B cut: sum_i p_i S(tr_A |psi_i><psi_i|).
double mean_entanglement(const Ensemble& e);

// Applies a joint unitary on A (x) B to every member.
Ensemble apply_gate(const Ensemble& e, const Mat& u);

// Mixes two ensembles over the same A space with an orthogonal tag qubit
// appended to Bob's side, so both Holevo information and mean entanglement
// interpolate linearly (up to the tag's own entropy, which cancels in
// before/after differences).
Ensemble tag_mixture(const Ensemble& a, const Ensemble& b, double lambda);

}  // namespace cobit::capacity
