#include "cobit/capacity/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "cobit/ops.hpp"

namespace cobit::capacity {

namespace {

double entropy_bits(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(rho, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(eig.eigenvalues());
}

}  // namespace

void validate_ensemble(const Ensemble& e) {
  if (e.dim_a < 2 || e.dim_b < 2)
    throw std::invalid_argument("ensemble subsystem dimensions must be >= 2");
  if (e.probs.empty() || e.probs.size() != e.states.size())
    throw std::invalid_argument("ensemble needs matching, nonempty probs and states");
  double total = 0.0;
  for (double p : e.probs) {
    if (p < -1e-12) throw std::invalid_argument("ensemble probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("ensemble probabilities must sum to one");
  long long dim = static_cast<long long>(e.dim_a) * e.dim_b;
  for (const Vec& s : e.states) {
    if (s.size() != dim) throw std::invalid_argument("ensemble member has wrong dimension");
    if (std::abs(s.squaredNorm() - 1.0) > 1e-9)
      throw std::invalid_argument("ensemble member is not normalized");
  }
}

Mat bob_reduction(const Ensemble& e, std::size_t i) {
  Eigen::Map<const Mat> m(e.states.at(i).data(), e.dim_b, e.dim_a);
  // Eigen maps are column-major, so column a of `m` is Bob's block for
  // Alice's basis index a; the reduction is sum_a (col_a)(col_a)^dag.
  return m * m.adjoint();
}

double holevo_chi_bob(const Ensemble& e) {
  Mat avg = Mat::Zero(e.dim_b, e.dim_b);
  double conditional = 0.0;
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    if (e.probs[i] <= 0.0) continue;
    Mat rho = bob_reduction(e, i);
    avg += e.probs[i] * rho;
    conditional += e.probs[i] * entropy_bits(rho);
  }
  return entropy_bits(avg) - conditional;
}

double mean_entanglement(const Ensemble& e) {
  double out = 0.0;
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    if (e.probs[i] <= 0.0) continue;
    out += e.probs[i] * entropy_bits(bob_reduction(e, i));
  }
  return out;
}

Ensemble apply_gate(const Ensemble& e, const Mat& u) {
  long long dim = static_cast<long long>(e.dim_a) * e.dim_b;
  if (u.rows() != dim || u.cols() != dim)
    throw std::invalid_argument("gate dimension does not match the ensemble");
  Ensemble out = e;
  for (Vec& s : out.states) s = u * s;
  return out;
}

Ensemble tag_mixture(const Ensemble& a, const Ensemble& b, double lambda) {
  if (a.dim_a != b.dim_a || a.dim_b != b.dim_b)
    throw std::invalid_argument("tag mixture needs ensembles on matching spaces");
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("mixture weight must be in [0, 1]");
  Ensemble out;
  out.dim_a = a.dim_a;
  out.dim_b = a.dim_b * 2;
  auto push = [&](const Ensemble& src, double weight, int tag) {
    for (std::size_t i = 0; i < src.states.size(); ++i) {
      Vec tagged = Vec::Zero(static_cast<long long>(out.dim_a) * out.dim_b);
      for (int x = 0; x < src.dim_a; ++x)
        for (int y = 0; y < src.dim_b; ++y)
          tagged((static_cast<long long>(x) * src.dim_b + y) * 2 + tag) =
              src.states[i](static_cast<long long>(x) * src.dim_b + y);
      out.probs.push_back(weight * src.probs[i]);
      out.states.push_back(std::move(tagged));
    }
  };
  push(a, lambda, 0);
  push(b, 1.0 - lambda, 1);
  return out;
}

}  // namespace cobit::capacity
