#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "cobit/capacity/ensemble.hpp"
#include "cobit/types.hpp"

namespace cobit::capacity {

// A bipartite gate together with how its space factors into Alice and Bob.
struct GateSpec {
  std::string name;
  Mat u;
  int dim_a = 2;
  int dim_b = 2;
};

GateSpec cnot_spec();
GateSpec swap_spec();
GateSpec identity_spec(int dim_a = 2, int dim_b = 2);
// Expects {"name", "dim_a", "dim_b", "unitary"} with the matrix flattened
// row-major as [re, im] pairs.
GateSpec gate_from_json(const nlohmann::json& j);

struct DeltaChiOptions {
  int members = 4;    // ensemble size used by the optimizer
  int restarts = 8;   // random restarts in addition to the seeded witnesses
  std::uint64_t seed = 1;
  int max_iterations = 3000;
  double entanglement_slack = 1e-6;  // allowed overshoot of the constraint
};

struct DeltaChiResult {
  double value = 0.0;         // best increase of Bob's Holevo information found
  double entanglement = 0.0;  // mean input entanglement of the best ensemble
  Ensemble best;              // the achieving input ensemble
  std::string status;         // "converged" | "budget-exhausted" | "infeasible"
};

// Lower-bounds the one-shot gain of Bob's Holevo information over input
// ensembles with mean entanglement at most e: a penalized Nelder-Mead search
// seeded with both random starts and known witness ensembles. Every evaluated
// feasible candidate competes, so returned values never fall below the
// witnesses' exact scores.
DeltaChiResult delta_chi_e(const GateSpec& gate, double e, const DeltaChiOptions& = {});

// Evaluates the gain for one explicit ensemble (no optimization).
double delta_chi_of(const GateSpec& gate, const Ensemble& ensemble);

// Witness ensembles for a qubit-qubit gate: the unentangled pair
// {|00>, |10>} and the uniform Bell basis reached by Pauli encodings.
Ensemble witness_unentangled(int dim_a, int dim_b);
Ensemble witness_bell_basis();

struct ConcavityReport {
  std::vector<double> grid;
  std::vector<double> values;
  double worst_violation = 0.0;  // largest chord excess above the curve
};

// Runs the optimizer across an increasing entanglement grid (>= 3 points)
// and measures how far any chord rises above the curve.
ConcavityReport concavity_scan(const GateSpec& gate, const std::vector<double>& grid,
                               const DeltaChiOptions& = {});

struct QeResult {
  double q = 0.0;
  double residual = 0.0;  // |delta_chi_{e+q}/2 - q| at the returned point
  std::string status;     // "converged" | "max-rate" (root above the cap)
};

// Solves delta_chi_{e+Q}(U)/2 - Q = 0 for Q in [0, log2 min(dim_a, dim_b)]
// by bisection; the fixed point is the sustainable entanglement-balanced
// communication rate of the gate.
QeResult solve_qe(const GateSpec& gate, double e, const DeltaChiOptions& = {});

}  // namespace cobit::capacity
