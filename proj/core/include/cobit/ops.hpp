#pragma once

#include "cobit/types.hpp"

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace cobit {

// |Phi_d> = d^{-1/2} sum_i |i>_A |i>_B on two fresh d-dimensional registers.
PureState make_bell(int d, const std::string& label_a = "a", const std::string& label_b = "b");

// Basis state of an existing layout.
PureState basis_state(RegisterLayout layout, long long index);

// Tensor product; labels must not collide. Subsystems of `a` come first.
PureState tensor(const PureState& a, const PureState& b);

// Applies a unitary (or square isometry) to the listed target subsystems.
// The operator index convention puts targets[0] in the most significant
// position. Norm is checked after the fact.
PureState apply(const PureState& psi, const Mat& op, const std::vector<std::string>& targets);

// Applies an isometry whose output dimension is (product of target dims) * m;
// the new m-dimensional subsystem `appended` joins the end of the layout.
PureState apply(const PureState& psi, const Isometry& v, const std::vector<std::string>& targets,
                const Subsystem& appended);

// Applies an arbitrary square operator without any isometry or norm check.
// The result is generally unnormalized; callers own renormalization.
struct UnnormalizedState {
  RegisterLayout layout;
  Vec amplitudes;
  double squared_norm() const { return amplitudes.squaredNorm(); }
};
UnnormalizedState apply_operator(const PureState& psi, const Mat& op,
                                 const std::vector<std::string>& targets);

// Controlled unitary with the control register listed first: control value k
// applies blocks[k] to the target subsystem. blocks.size() must equal the
// control dimension.
PureState apply_controlled(const PureState& psi, const std::string& control,
                           const std::vector<Mat>& blocks, const std::string& target);

// Layout surgery. All of these preserve amplitudes up to index relabeling.
PureState permute_subsystems(const PureState& psi, const std::vector<std::string>& order);
PureState relabel(const PureState& psi, const std::string& old_label,
                  const std::string& new_label);
PureState relabel_party(const PureState& psi, const std::string& label, Party party);
PureState split_subsystem(const PureState& psi, const std::string& label, Subsystem first,
                          Subsystem second);
// Drops basis components >= new_dim of one subsystem; their total probability
// mass must not exceed `tol`.
PureState truncate_subsystem(const PureState& psi, const std::string& label, int new_dim,
                             double tol = 1e-12);
// Removes a subsystem that is in a product state with the rest by contracting
// against `local_state` (caller-supplied to keep phases deterministic).
PureState drop_subsystem(const PureState& psi, const std::string& label, const Vec& local_state,
                         double tol = 1e-9);

// Reduced density matrix of the subsystems held by `kept` parties (layout
// order preserved). `kept` must be a nonempty proper subset of the parties
// present.
DensityMatrix partial_trace(const PureState& psi, const std::set<Party>& kept);
DensityMatrix partial_trace_labels(const PureState& psi, const std::vector<std::string>& kept);

struct SchmidtData {
  Eigen::VectorXd coefficients;  // descending singular values of the cut
  double entropy_bits = 0.0;
};

// Schmidt decomposition across the bipartition (left parties | the rest).
SchmidtData schmidt(const PureState& psi, const std::set<Party>& left);
SchmidtData schmidt_labels(const PureState& psi, const std::vector<std::string>& left);

cplx overlap(const PureState& a, const PureState& b);
double fidelity(const PureState& a, const PureState& b);

// Entropy in bits; eigenvalues below kEntropyClip are treated as zero.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const Eigen::VectorXd& spectrum);

// Principal square root of a PSD matrix via eigendecomposition with the
// usual clipping of slightly negative eigenvalues.
Mat matrix_sqrt_psd(const Mat& a);

// Neumark dilation V|phi>|0> = sum_k sqrt(A_k)|phi>|k>; the outcome register
// has one level per POVM element, appended least significant.
Isometry neumark_dilate(const Povm& povm);

std::vector<double> born_probabilities(const PureState& psi, const Povm& povm,
                                       const std::vector<std::string>& targets);

struct MeasureResult {
  int index = -1;
  std::string label;
  double probability = 0.0;  // exact Born probability of the sampled outcome
  PureState post;
};

// Samples one POVM outcome by Born probability and returns the renormalized
// post-measurement state. Outcomes with probability < 1e-14 are never drawn.
MeasureResult measure(const PureState& psi, const Povm& povm,
                      const std::vector<std::string>& targets, std::mt19937_64& rng);

}  // namespace cobit
