#include "cobit/capacity/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cobit/capacity/nelder_mead.hpp"
#include "cobit/gates.hpp"
#include "cobit/random.hpp"
#include "cobit/serialize.hpp"

namespace cobit::capacity {

namespace {

void validate_gate(const GateSpec& gate) {
  if (gate.dim_a < 2 || gate.dim_b < 2)
    throw std::invalid_argument("gate subsystem dimensions must be >= 2");
  long long dim = static_cast<long long>(gate.dim_a) * gate.dim_b;
  if (gate.u.rows() != dim || gate.u.cols() != dim)
    throw std::invalid_argument("gate matrix must act on dim_a * dim_b");
  if ((gate.u.adjoint() * gate.u - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("gate matrix is not unitary");
}

double chi_gain(const GateSpec& gate, const Ensemble& ens) {
  return holevo_chi_bob(apply_gate(ens, gate.u)) - holevo_chi_bob(ens);
}

}  // namespace

GateSpec cnot_spec() { return {"cnot", gates::cnot(), 2, 2}; }
GateSpec swap_spec() { return {"swap", gates::swap_gate(), 2, 2}; }

GateSpec identity_spec(int dim_a, int dim_b) {
  return {"identity", gates::identity(dim_a * dim_b), dim_a, dim_b};
}

GateSpec gate_from_json(const nlohmann::json& j) {
  GateSpec g;
  g.name = j.at("name").get<std::string>();
  g.dim_a = j.at("dim_a").get<int>();
  g.dim_b = j.at("dim_b").get<int>();
  long long dim = static_cast<long long>(g.dim_a) * g.dim_b;
  g.u = matrix_from_json(j.at("unitary"), dim, dim);
  validate_gate(g);
  return g;
}

Ensemble witness_unentangled(int dim_a, int dim_b) {
  Ensemble e;
  e.dim_a = dim_a;
  e.dim_b = dim_b;
  for (int a = 0; a < dim_a; ++a) {
    Vec v = Vec::Zero(static_cast<long long>(dim_a) * dim_b);
    v(static_cast<long long>(a) * dim_b) = 1.0;
    e.probs.push_back(1.0 / dim_a);
    e.states.push_back(std::move(v));
  }
  return e;
}

Ensemble witness_bell_basis() {
  Ensemble e;
  e.dim_a = 2;
  e.dim_b = 2;
  Vec phi(4);
  double r = 1.0 / std::sqrt(2.0);
  phi << r, 0, 0, r;
  for (const Mat& p : gates::paulis()) {
    e.probs.push_back(0.25);
    e.states.push_back(gates::kron(p, gates::identity(2)) * phi);
  }
  return e;
}

double delta_chi_of(const GateSpec& gate, const Ensemble& ensemble) {
  validate_gate(gate);
  validate_ensemble(ensemble);
  if (ensemble.dim_a != gate.dim_a || ensemble.dim_b != gate.dim_b)
    throw std::invalid_argument("ensemble does not match the gate's factorization");
  return chi_gain(gate, ensemble);
}

DeltaChiResult delta_chi_e(const GateSpec& gate, double e, const DeltaChiOptions& opt) {
  validate_gate(gate);
  if (opt.members < 1) throw std::invalid_argument("optimizer needs at least one member");
  if (opt.restarts < 0) throw std::invalid_argument("restart count must be nonnegative");

  DeltaChiResult out;
  if (e < 0.0) {
    out.status = "infeasible";
    out.value = -std::numeric_limits<double>::infinity();
    return out;
  }

  const int da = gate.dim_a;
  const int db = gate.dim_b;
  const long long dim = static_cast<long long>(da) * db;
  const int per_member = 1 + 2 * static_cast<int>(dim);
  const int nvar = opt.members * per_member;

  double best_value = -std::numeric_limits<double>::infinity();
  double best_ent = 0.0;
  Ensemble best_ens;
  auto consider = [&](const Ensemble& ens, double ent, double gain) {
    if (ent > e + opt.entanglement_slack) return;
    if (gain > best_value) {
      best_value = gain;
      best_ent = ent;
      best_ens = ens;
    }
  };
  auto consider_fresh = [&](const Ensemble& ens) {
    consider(ens, mean_entanglement(ens), chi_gain(gate, ens));
  };

  consider_fresh(witness_unentangled(da, db));
  if (da == 2 && db == 2) consider_fresh(witness_bell_basis());

  auto decode = [&](const Eigen::VectorXd& x) {
    Ensemble ens;
    ens.dim_a = da;
    ens.dim_b = db;
    double wmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < opt.members; ++i) wmax = std::max(wmax, x(i * per_member));
    double wsum = 0.0;
    for (int i = 0; i < opt.members; ++i) {
      double w = std::exp(x(i * per_member) - wmax);
      ens.probs.push_back(w);
      wsum += w;
      Vec v(dim);
      for (long long k = 0; k < dim; ++k)
        v(k) = cplx(x(i * per_member + 1 + 2 * k), x(i * per_member + 2 + 2 * k));
      double norm = v.norm();
      if (norm < 1e-12) {
        v = Vec::Zero(dim);
        v(0) = 1.0;
      } else {
        v /= norm;
      }
      ens.states.push_back(std::move(v));
    }
    for (double& p : ens.probs) p /= wsum;
    return ens;
  };

  bool any_converged = true;  // true when no random restarts were requested
  if (opt.restarts > 0) any_converged = false;
  for (int r = 0; r < opt.restarts; ++r) {
    std::mt19937_64 rng = substream(opt.seed, "capacity-restart", static_cast<std::uint64_t>(r));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd x0(nvar);
    for (int i = 0; i < nvar; ++i) x0(i) = gauss(rng);

    double penalty = 64.0;
    Eigen::VectorXd xcur = x0;
    for (int round = 0; round < 5; ++round) {
      auto objective = [&](const Eigen::VectorXd& x) {
        Ensemble ens = decode(x);
        double ent = mean_entanglement(ens);
        double gain = chi_gain(gate, ens);
        consider(ens, ent, gain);
        double over = std::max(0.0, ent - e);
        return -gain + penalty * over * over;
      };
      NelderMeadOptions nm;
      nm.max_iterations = opt.max_iterations;
      NelderMeadResult res = nelder_mead(objective, xcur, nm);
      xcur = res.x;
      if (res.converged) any_converged = true;
      if (mean_entanglement(decode(xcur)) <= e + opt.entanglement_slack) break;
      penalty *= 8.0;
    }
  }

  out.value = best_value;
  out.entanglement = best_ent;
  out.best = std::move(best_ens);
  out.status = any_converged ? "converged" : "budget-exhausted";
  return out;
}

ConcavityReport concavity_scan(const GateSpec& gate, const std::vector<double>& grid,
                               const DeltaChiOptions& opt) {
  if (grid.size() < 3)
    throw std::invalid_argument("concavity scan needs at least three grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0)
      throw std::invalid_argument("entanglement grid points must be nonnegative");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("entanglement grid must be strictly increasing");
  }

  ConcavityReport rep;
  rep.grid = grid;
  for (double e : grid) rep.values.push_back(delta_chi_e(gate, e, opt).value);

  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t k = i + 2; k < grid.size(); ++k)
      for (std::size_t j = i + 1; j < k; ++j) {
        double t = (grid[j] - grid[i]) / (grid[k] - grid[i]);
        double chord = rep.values[i] + t * (rep.values[k] - rep.values[i]);
        rep.worst_violation = std::max(rep.worst_violation, chord - rep.values[j]);
      }
  return rep;
}

QeResult solve_qe(const GateSpec& gate, double e, const DeltaChiOptions& opt) {
  validate_gate(gate);
  if (e < 0.0) throw std::invalid_argument("entanglement allowance must be nonnegative");
  double qmax = std::log2(static_cast<double>(std::min(gate.dim_a, gate.dim_b)));
  auto balance = [&](double q) { return 0.5 * delta_chi_e(gate, e + q, opt).value - q; };

  QeResult out;
  double lo = 0.0;
  double g_lo = balance(lo);
  if (g_lo <= 0.0) {
    out.q = 0.0;
    out.residual = std::abs(g_lo);
    out.status = "converged";
    return out;
  }
  double hi = qmax;
  double g_hi = balance(hi);
  if (g_hi > 0.0) {
    out.q = qmax;
    out.residual = std::abs(g_hi);
    out.status = "max-rate";
    return out;
  }
  for (int i = 0; i < 14; ++i) {
    double mid = 0.5 * (lo + hi);
    if (balance(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.q = 0.5 * (lo + hi);
  out.residual = std::abs(balance(out.q));
  out.status = "converged";
  return out;
}

}  // namespace cobit::capacity
