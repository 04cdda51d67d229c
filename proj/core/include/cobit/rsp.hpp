#pragma once

#include <json.hpp>

#include <random>
#include <vector>

#include "cobit/ops.hpp"
#include "cobit/protocols/transcript.hpp"
#include "cobit/types.hpp"

namespace cobit::rsp {

// A finite set of unitaries that nearly twirls every pure state: for every
// unit vector psi, the mean of R psi psi^dag R^dag over the set stays below
// (1 + epsilon/2)/d times the identity. The Pauli set achieves epsilon = 0
// exactly; random sets get an empirically calibrated epsilon.
struct CoveringSet {
  int d = 2;
  int n = 0;
  double epsilon = 0.0;
  std::vector<Mat> unitaries;
};

CoveringSet pauli_cover();

// Draws n Haar-random unitaries and calibrates epsilon as 1.1 times the worst
// relative slack observed over `test_states` Haar-random probe states.
// Requires n >= d*d.
CoveringSet sample_covering(int d, int n, std::mt19937_64& rng, int test_states = 500);

nlohmann::json covering_to_json(const CoveringSet& cover);
CoveringSet covering_from_json(const nlohmann::json& j);

// The POVM Alice measures on her half of Phi_d when preparing psi remotely:
// one acceptance element per covering unitary plus one failure element.
// Throws std::domain_error if the covering's slack is exceeded for this psi.
Povm build_povm(const CoveringSet& cover, const Vec& psi);

struct RspResult {
  bool success = false;
  double fidelity = 0.0;          // vs Phi_n on the outcome registers ⊗ psi at Bob
  double fail_probability = 0.0;  // Born probability of the failure outcome
  protocols::Transcript transcript;
};

// One round of coherent remote state preparation. On success Bob holds psi
// and the coherently retained outcome registers form a maximally entangled
// pair of dimension n. On failure the shared state is lost and the caller
// retries with a fresh one.
RspResult run_coherent_rsp(const Vec& psi, const CoveringSet& cover, std::mt19937_64& rng);

// Resource ledger of one successful round, exact only when n and d are both
// powers of two (otherwise the yields are irrational in qubit units).
struct RspAccount {
  bool exact = false;
  calculus::ResourceVector consumed;
  calculus::ResourceVector produced;
  calculus::ResourceVector catalysts;
};
RspAccount rsp_resource_account(const CoveringSet& cover);

}  // namespace cobit::rsp
