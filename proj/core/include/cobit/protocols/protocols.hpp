#pragma once

#include <random>
#include <string>
#include <vector>

#include "cobit/ops.hpp"
#include "cobit/protocols/transcript.hpp"
#include "cobit/types.hpp"

namespace cobit::protocols {

// One use of the coherent classical channel: the computational basis of
// `label` is copied into a fresh same-dimension subsystem `copy_label` held
// by `receiver`, i.e. |i> -> |i>|i>.
PureState coherent_copy(const PureState& psi, const std::string& label,
                        const std::string& copy_label, Party receiver);

// Degrading a coherent classical channel to an ordinary classical one: the
// sender's retained copy is handed to the environment. Runs on an arbitrary
// normalized qubit message.
Transcript cobit_to_cbit(const Vec& message);

// A coherent classical channel fed with |+> leaves a shared Bell pair.
Transcript cobit_to_ebit();

// Superdense coding run on coherent inputs: a two-qubit message plus one
// Bell pair and one qubit of communication deliver two coherent classical
// channels. `message` has dimension 4 over qubits (m1, m2), m1 most
// significant. The overload taking `shared` validates that it is a two-qubit
// Bell pair held A then B.
Transcript coherent_superdense_coding(const Vec& message);
Transcript coherent_superdense_coding(const Vec& message, const PureState& shared);

// How the two coherent classical channel uses inside teleportation are
// realized: as abstract copies, or by running superdense coding inline (which
// makes the combined protocol consume and regenerate exactly one qubit
// channel use and one Bell pair).
enum class CobitProvider { Ideal, SuperdenseCoding };

// Teleportation with coherently retained measurement registers: the input
// qubit lands at Bob and both "message" registers become shared Bell pairs,
// one of which repays the borrowed catalyst.
Transcript coherent_teleportation(const Vec& psi, CobitProvider provider = CobitProvider::Ideal);
Transcript coherent_teleportation(const Vec& psi, const PureState& shared,
                                  CobitProvider provider = CobitProvider::Ideal);

// One nonlocal CNOT plus one Bell pair run on coherent inputs yields a
// coherent classical channel in each direction. `joint` has dimension 4 over
// (a@A, b@B), a most significant.
Transcript cnot_to_coherent_bidirectional(const Vec& joint);

// One coherent classical channel in each direction implements a nonlocal
// CNOT and leaves a fresh Bell pair, with one Bell pair borrowed as catalyst.
// `joint` has dimension 4 over (x@A, y@B), x = control, most significant.
Transcript coherent_distributed_cnot(const Vec& joint);

struct ConcentrationResult {
  int weight = 0;            // sampled Hamming weight of Alice's half
  double probability = 0.0;  // Born probability of that weight
  double entropy_bits = 0.0; // entanglement across A|B after the projection
  Transcript transcript;
};

// Entanglement concentration on `copies` IID copies of a two-qubit pure state
// (first qubit Alice's, second Bob's): rotate each copy into its Schmidt
// basis, then measure the total Hamming weight of Alice's side. The result is
// maximally entangled of Schmidt rank C(copies, weight).
ConcentrationResult entanglement_concentrate(const Vec& pair, int copies, std::mt19937_64& rng);

// Classical coding over a quantum channel, kept coherent: a basis message
// selects one of `codewords` (pairwise orthogonal unit vectors), Bob decodes
// with the support projectors lifted to an isometry, uncomputes the codeword,
// and is left holding a coherent copy of the message.
Transcript coherent_classical_coding(const std::vector<Vec>& codewords, const Vec& message);

struct GentleMeasurementReport {
  double probability = 0.0;
  double disturbance = 0.0;  // 1 - F(pre, post)
  double bound = 0.0;        // 2 * sqrt(1 - probability)
};

// Checks how little a near-certain POVM outcome disturbs the state: the
// returned disturbance always sits below the 2*sqrt(1-p) bound.
GentleMeasurementReport gentle_measurement_check(const PureState& psi, const Povm& povm,
                                                 const std::vector<std::string>& targets,
                                                 int outcome);

}  // namespace cobit::protocols
