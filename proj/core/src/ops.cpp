#include "cobit/ops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cobit {

namespace {

// Flat-index bookkeeping for applying operators to a subset of subsystems.
// target_offsets[g] is the flat contribution of the g-th combined target
// index (targets[0] most significant); rest_offsets enumerates everything
// else in layout order.
struct GatherPlan {
  std::vector<long long> target_offsets;
  std::vector<long long> rest_offsets;
  long long din = 1;
};

std::vector<long long> offsets_for_positions(const RegisterLayout& layout,
                                             const std::vector<int>& positions) {
  long long total = 1;
  for (int p : positions) total *= layout.at(p).dim;
  std::vector<long long> offsets(total, 0);
  for (long long g = 0; g < total; ++g) {
    long long rem = g;
    for (int i = static_cast<int>(positions.size()) - 1; i >= 0; --i) {
      int d = layout.at(positions[i]).dim;
      long long comp = rem % d;
      rem /= d;
      offsets[g] += comp * layout.stride(positions[i]);
    }
  }
  return offsets;
}

GatherPlan make_plan(const RegisterLayout& layout, const std::vector<std::string>& targets) {
  if (targets.empty()) throw std::invalid_argument("operator needs at least one target");
  GatherPlan plan;
  std::vector<int> tpos = layout.positions(targets);
  for (int p : tpos) plan.din *= layout.at(p).dim;
  plan.target_offsets = offsets_for_positions(layout, tpos);
  std::vector<int> rest;
  for (int p = 0; p < layout.size(); ++p)
    if (std::find(tpos.begin(), tpos.end(), p) == tpos.end()) rest.push_back(p);
  plan.rest_offsets = offsets_for_positions(layout, rest);
  return plan;
}

Vec transform(const Vec& amps, const Mat& op, const GatherPlan& plan, long long append_dim) {
  long long dout = op.rows();
  Vec out = Vec::Zero(amps.size() / plan.din * dout);
  Vec x(plan.din);
  for (long long ro : plan.rest_offsets) {
    for (long long g = 0; g < plan.din; ++g) x(g) = amps(ro + plan.target_offsets[g]);
    Vec y = op * x;
    if (append_dim == 1) {
      for (long long g = 0; g < plan.din; ++g) out(ro + plan.target_offsets[g]) = y(g);
    } else {
      for (long long g = 0; g < plan.din; ++g)
        for (long long k = 0; k < append_dim; ++k)
          out((ro + plan.target_offsets[g]) * append_dim + k) = y(g * append_dim + k);
    }
  }
  return out;
}

bool is_unitary(const Mat& m, double tol) {
  Mat gram = m.adjoint() * m;
  return (gram - Mat::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

PureState make_bell(int d, const std::string& label_a, const std::string& label_b) {
  if (d < 2) throw std::invalid_argument("maximally entangled state needs dim >= 2");
  RegisterLayout layout({{label_a, Party::A, d}, {label_b, Party::B, d}});
  Vec amps = Vec::Zero(static_cast<long long>(d) * d);
  double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) amps(static_cast<long long>(i) * d + i) = c;
  return PureState(std::move(layout), std::move(amps));
}

PureState basis_state(RegisterLayout layout, long long index) {
  if (index < 0 || index >= layout.total_dim())
    throw std::invalid_argument("basis index out of range");
  Vec amps = Vec::Zero(layout.total_dim());
  amps(index) = 1.0;
  return PureState(std::move(layout), std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Subsystem> subs = a.layout().subsystems();
  for (const auto& s : b.layout().subsystems()) subs.push_back(s);
  RegisterLayout layout(std::move(subs));
  long long db = b.dim();
  Vec amps(a.dim() * db);
  for (long long i = 0; i < a.dim(); ++i)
    for (long long j = 0; j < db; ++j) amps(i * db + j) = a.amplitudes()(i) * b.amplitudes()(j);
  return PureState(std::move(layout), std::move(amps));
}

PureState apply(const PureState& psi, const Mat& op, const std::vector<std::string>& targets) {
  GatherPlan plan = make_plan(psi.layout(), targets);
  if (op.rows() != op.cols() || op.cols() != plan.din)
    throw std::invalid_argument("operator dimension does not match the product of target dims");
  if (!is_unitary(op, kIsometryTol))
    throw std::invalid_argument("operator is not unitary; use apply_operator for general maps");
  Vec out = transform(psi.amplitudes(), op, plan, 1);
  return PureState(psi.layout(), std::move(out));
}

PureState apply(const PureState& psi, const Isometry& v, const std::vector<std::string>& targets,
                const Subsystem& appended) {
  GatherPlan plan = make_plan(psi.layout(), targets);
  if (v.input_dim() != plan.din)
    throw std::invalid_argument("isometry input does not match the product of target dims");
  if (v.output_dim() != plan.din * appended.dim)
    throw std::invalid_argument("isometry output must factor as targets x appended subsystem");
  Vec out = transform(psi.amplitudes(), v.matrix(), plan, appended.dim);
  std::vector<Subsystem> subs = psi.layout().subsystems();
  subs.push_back(appended);
  return PureState(RegisterLayout(std::move(subs)), std::move(out));
}

UnnormalizedState apply_operator(const PureState& psi, const Mat& op,
                                 const std::vector<std::string>& targets) {
  GatherPlan plan = make_plan(psi.layout(), targets);
  if (op.rows() != op.cols() || op.cols() != plan.din)
    throw std::invalid_argument("operator dimension does not match the product of target dims");
  return UnnormalizedState{psi.layout(), transform(psi.amplitudes(), op, plan, 1)};
}

PureState apply_controlled(const PureState& psi, const std::string& control,
                           const std::vector<Mat>& blocks, const std::string& target) {
  const RegisterLayout& layout = psi.layout();
  int pc = layout.position(control);
  int pt = layout.position(target);
  if (pc == pt) throw std::invalid_argument("control and target must differ");
  long long m = layout.at(pc).dim;
  long long q = layout.at(pt).dim;
  if (static_cast<long long>(blocks.size()) != m)
    throw std::invalid_argument("need one block per control level");
  for (const auto& b : blocks) {
    if (b.rows() != q || b.cols() != q)
      throw std::invalid_argument("block dimension does not match target subsystem");
    if (!is_unitary(b, kIsometryTol)) throw std::invalid_argument("block is not unitary");
  }
  std::vector<int> rest;
  for (int p = 0; p < layout.size(); ++p)
    if (p != pc && p != pt) rest.push_back(p);
  std::vector<long long> rest_offsets = offsets_for_positions(layout, rest);
  long long sc = layout.stride(pc);
  long long st = layout.stride(pt);
  Vec out(psi.dim());
  Vec x(q);
  for (long long ro : rest_offsets)
    for (long long k = 0; k < m; ++k) {
      long long base = ro + k * sc;
      for (long long j = 0; j < q; ++j) x(j) = psi.amplitudes()(base + j * st);
      Vec y = blocks[k] * x;
      for (long long j = 0; j < q; ++j) out(base + j * st) = y(j);
    }
  return PureState(layout, std::move(out));
}

PureState permute_subsystems(const PureState& psi, const std::vector<std::string>& order) {
  const RegisterLayout& layout = psi.layout();
  if (static_cast<int>(order.size()) != layout.size())
    throw std::invalid_argument("permutation must mention every subsystem exactly once");
  std::vector<int> old_pos = layout.positions(order);
  std::vector<Subsystem> subs;
  subs.reserve(order.size());
  for (int p : old_pos) subs.push_back(layout.at(p));
  RegisterLayout new_layout(std::move(subs));
  // new_stride_of_old[p]: stride in the new layout of the subsystem that sat
  // at old position p.
  std::vector<long long> new_stride_of_old(layout.size());
  for (int i = 0; i < layout.size(); ++i) new_stride_of_old[old_pos[i]] = new_layout.stride(i);
  Vec out(psi.dim());
  for (long long f = 0; f < psi.dim(); ++f) {
    long long rem = f;
    long long nf = 0;
    for (int p = layout.size() - 1; p >= 0; --p) {
      long long comp = rem % layout.at(p).dim;
      rem /= layout.at(p).dim;
      nf += comp * new_stride_of_old[p];
    }
    out(nf) = psi.amplitudes()(f);
  }
  return PureState(std::move(new_layout), std::move(out));
}

PureState relabel(const PureState& psi, const std::string& old_label,
                  const std::string& new_label) {
  std::vector<Subsystem> subs = psi.layout().subsystems();
  subs.at(psi.layout().position(old_label)).label = new_label;
  return PureState(RegisterLayout(std::move(subs)), psi.amplitudes());
}

PureState relabel_party(const PureState& psi, const std::string& label, Party party) {
  std::vector<Subsystem> subs = psi.layout().subsystems();
  subs.at(psi.layout().position(label)).party = party;
  return PureState(RegisterLayout(std::move(subs)), psi.amplitudes());
}

PureState split_subsystem(const PureState& psi, const std::string& label, Subsystem first,
                          Subsystem second) {
  const RegisterLayout& layout = psi.layout();
  int p = layout.position(label);
  if (first.dim * second.dim != layout.at(p).dim)
    throw std::invalid_argument("split dims must multiply to the original dim");
  std::vector<Subsystem> subs;
  for (int i = 0; i < layout.size(); ++i) {
    if (i == p) {
      subs.push_back(std::move(first));
      subs.push_back(std::move(second));
    } else {
      subs.push_back(layout.at(i));
    }
  }
  // The flat index is unchanged: the more significant half of the old
  // component becomes `first`.
  return PureState(RegisterLayout(std::move(subs)), psi.amplitudes());
}

PureState truncate_subsystem(const PureState& psi, const std::string& label, int new_dim,
                             double tol) {
  const RegisterLayout& layout = psi.layout();
  int p = layout.position(label);
  int d = layout.at(p).dim;
  if (new_dim < 2 || new_dim > d)
    throw std::invalid_argument("truncation dim must lie in [2, current dim]");
  std::vector<Subsystem> subs = layout.subsystems();
  subs[p].dim = new_dim;
  RegisterLayout new_layout(std::move(subs));
  Vec out = Vec::Zero(new_layout.total_dim());
  double lost = 0.0;
  for (long long f = 0; f < psi.dim(); ++f) {
    long long comp = (f / layout.stride(p)) % d;
    if (comp >= new_dim) {
      lost += std::norm(psi.amplitudes()(f));
      continue;
    }
    long long rem = f;
    long long nf = 0;
    for (int i = layout.size() - 1; i >= 0; --i) {
      long long c = rem % layout.at(i).dim;
      rem /= layout.at(i).dim;
      nf += c * new_layout.stride(i);
    }
    out(nf) = psi.amplitudes()(f);
  }
  if (lost > tol)
    throw std::invalid_argument("truncated components carry probability mass " +
                                std::to_string(lost));
  out.normalize();
  return PureState(std::move(new_layout), std::move(out));
}

PureState drop_subsystem(const PureState& psi, const std::string& label, const Vec& local_state,
                         double tol) {
  const RegisterLayout& layout = psi.layout();
  if (layout.size() < 2)
    throw std::invalid_argument("cannot drop the only subsystem");
  int p = layout.position(label);
  int d = layout.at(p).dim;
  if (local_state.size() != d)
    throw std::invalid_argument("local state dimension does not match subsystem");
  if (std::abs(local_state.squaredNorm() - 1.0) > 1e-10)
    throw std::invalid_argument("local state must be normalized");
  std::vector<Subsystem> subs;
  for (int i = 0; i < layout.size(); ++i)
    if (i != p) subs.push_back(layout.at(i));
  RegisterLayout new_layout(std::move(subs));
  Vec out = Vec::Zero(new_layout.total_dim());
  long long sp = layout.stride(p);
  for (long long f = 0; f < psi.dim(); ++f) {
    long long comp = (f / sp) % d;
    long long nf = (f / (sp * d)) * sp + f % sp;
    out(nf) += std::conj(local_state(comp)) * psi.amplitudes()(f);
  }
  double n2 = out.squaredNorm();
  if (n2 < 1.0 - tol)
    throw std::invalid_argument(
        "subsystem '" + label + "' is not in the given product state (residual mass " +
        std::to_string(1.0 - n2) + ")");
  out.normalize();
  return PureState(std::move(new_layout), std::move(out));
}

namespace {

std::vector<int> party_positions(const RegisterLayout& layout, const std::set<Party>& parties) {
  std::vector<int> out;
  for (int i = 0; i < layout.size(); ++i)
    if (parties.count(layout.at(i).party)) out.push_back(i);
  return out;
}

DensityMatrix reduce_to_positions(const PureState& psi, std::vector<int> kept) {
  const RegisterLayout& layout = psi.layout();
  std::sort(kept.begin(), kept.end());
  if (kept.empty()) throw std::invalid_argument("partial trace must keep something");
  if (static_cast<int>(kept.size()) == layout.size())
    throw std::invalid_argument("partial trace must trace something out");
  std::vector<int> rest;
  for (int p = 0; p < layout.size(); ++p)
    if (std::find(kept.begin(), kept.end(), p) == kept.end()) rest.push_back(p);
  std::vector<long long> kept_off = offsets_for_positions(layout, kept);
  std::vector<long long> rest_off = offsets_for_positions(layout, rest);
  long long dk = static_cast<long long>(kept_off.size());
  Mat rho = Mat::Zero(dk, dk);
  Vec v(dk);
  for (long long ro : rest_off) {
    for (long long g = 0; g < dk; ++g) v(g) = psi.amplitudes()(ro + kept_off[g]);
    rho.noalias() += v * v.adjoint();
  }
  return DensityMatrix(std::move(rho));
}

SchmidtData schmidt_at_positions(const PureState& psi, const std::vector<int>& left) {
  const RegisterLayout& layout = psi.layout();
  if (left.empty() || static_cast<int>(left.size()) == layout.size())
    throw std::invalid_argument("Schmidt cut must be a nontrivial bipartition");
  std::vector<long long> lstride(layout.size(), -1), rstride(layout.size(), -1);
  long long dl = 1, dr = 1;
  for (int p = layout.size() - 1; p >= 0; --p) {
    bool is_left = std::find(left.begin(), left.end(), p) != left.end();
    if (is_left) {
      lstride[p] = dl;
      dl *= layout.at(p).dim;
    } else {
      rstride[p] = dr;
      dr *= layout.at(p).dim;
    }
  }
  Mat m = Mat::Zero(dl, dr);
  for (long long f = 0; f < psi.dim(); ++f) {
    long long rem = f, l = 0, r = 0;
    for (int p = layout.size() - 1; p >= 0; --p) {
      long long comp = rem % layout.at(p).dim;
      rem /= layout.at(p).dim;
      if (lstride[p] >= 0)
        l += comp * lstride[p];
      else
        r += comp * rstride[p];
    }
    m(l, r) = psi.amplitudes()(f);
  }
  Eigen::BDCSVD<Mat> svd(m);
  SchmidtData out;
  out.coefficients = svd.singularValues();
  Eigen::VectorXd probs = out.coefficients.array().square();
  out.entropy_bits = entropy_of_spectrum(probs);
  return out;
}

}  // namespace

DensityMatrix partial_trace(const PureState& psi, const std::set<Party>& kept) {
  return reduce_to_positions(psi, party_positions(psi.layout(), kept));
}

DensityMatrix partial_trace_labels(const PureState& psi, const std::vector<std::string>& kept) {
  return reduce_to_positions(psi, psi.layout().positions(kept));
}

SchmidtData schmidt(const PureState& psi, const std::set<Party>& left) {
  return schmidt_at_positions(psi, party_positions(psi.layout(), left));
}

SchmidtData schmidt_labels(const PureState& psi, const std::vector<std::string>& left) {
  return schmidt_at_positions(psi, psi.layout().positions(left));
}

cplx overlap(const PureState& a, const PureState& b) {
  if (!(a.layout() == b.layout()))
    throw std::invalid_argument("overlap requires identical layouts");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const PureState& a, const PureState& b) {
  double f = std::norm(overlap(a, b));
  return std::clamp(f, 0.0, 1.0);
}

double entropy_of_spectrum(const Eigen::VectorXd& spectrum) {
  double h = 0.0;
  for (long long i = 0; i < spectrum.size(); ++i) {
    double p = spectrum(i);
    if (p < kEntropyClip) continue;
    h -= p * std::log2(p);
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix(), Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

Mat matrix_sqrt_psd(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix square root needs a square input");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("matrix square root needs a Hermitian input");
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  Eigen::VectorXd lam = es.eigenvalues();
  for (long long i = 0; i < lam.size(); ++i) {
    if (lam(i) < -kPsdTol)
      throw std::invalid_argument("matrix square root needs a PSD input");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal().toDenseMatrix().cast<cplx>() *
         es.eigenvectors().adjoint();
}

namespace {

Mat element_sqrt(const Mat& a) {
  // Projectors are ubiquitous here (success/fail filters, decoders); skip the
  // eigendecomposition when A^2 == A.
  if ((a * a - a).cwiseAbs().maxCoeff() < 1e-12) return a;
  return matrix_sqrt_psd(a);
}

}  // namespace

Isometry neumark_dilate(const Povm& povm) {
  long long d = povm.dim();
  long long m = povm.size();
  Mat v = Mat::Zero(d * m, d);
  for (long long k = 0; k < m; ++k) {
    Mat s = element_sqrt(povm.at(static_cast<int>(k)).op);
    for (long long row = 0; row < d; ++row)
      for (long long col = 0; col < d; ++col) v(row * m + k, col) = s(row, col);
  }
  return Isometry(std::move(v));
}

std::vector<double> born_probabilities(const PureState& psi, const Povm& povm,
                                       const std::vector<std::string>& targets) {
  std::vector<double> probs;
  probs.reserve(povm.size());
  for (const auto& e : povm.elements()) {
    UnnormalizedState u = apply_operator(psi, e.op, targets);
    probs.push_back(std::max(0.0, psi.amplitudes().dot(u.amplitudes).real()));
  }
  return probs;
}

MeasureResult measure(const PureState& psi, const Povm& povm,
                      const std::vector<std::string>& targets, std::mt19937_64& rng) {
  std::vector<double> probs = born_probabilities(psi, povm, targets);
  constexpr double kMinSample = 1e-14;
  double total = 0.0;
  for (double p : probs)
    if (p >= kMinSample) total += p;
  if (total <= 0.0) throw std::runtime_error("no POVM outcome has samplable probability");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng) * total;
  int chosen = -1;
  double cum = 0.0;
  for (int k = 0; k < povm.size(); ++k) {
    if (probs[k] < kMinSample) continue;
    cum += probs[k];
    chosen = k;
    if (u < cum) break;
  }
  Mat s = element_sqrt(povm.at(chosen).op);
  UnnormalizedState u2 = apply_operator(psi, s, targets);
  Vec post = u2.amplitudes / std::sqrt(u2.squared_norm());
  return MeasureResult{chosen, povm.at(chosen).label, probs[chosen],
                       PureState(psi.layout(), std::move(post))};
}

}  // namespace cobit
