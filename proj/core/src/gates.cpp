#include "cobit/gates.hpp"

#include <stdexcept>

namespace cobit::gates {

namespace {
const cplx kI{0.0, 1.0};
}

Mat identity(int d) { return Mat::Identity(d, d); }

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat hadamard() {
  Mat m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Mat phase_s() {
  Mat m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

Mat cnot() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Mat cz() {
  Mat m = Mat::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

Mat swap_gate() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

std::array<Mat, 4> paulis() { return {identity(2), pauli_x(), pauli_y(), pauli_z()}; }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long long i = 0; i < a.rows(); ++i)
    for (long long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat controlled(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("controlled() needs at least one block");
  long long q = blocks.front().rows();
  for (const auto& b : blocks)
    if (b.rows() != q || b.cols() != q)
      throw std::invalid_argument("controlled() blocks must be square and equally sized");
  long long m = static_cast<long long>(blocks.size());
  Mat out = Mat::Zero(m * q, m * q);
  for (long long k = 0; k < m; ++k) out.block(k * q, k * q, q, q) = blocks[k];
  return out;
}

}  // namespace cobit::gates
