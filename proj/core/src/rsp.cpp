#include "cobit/rsp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cobit/gates.hpp"
#include "cobit/protocols/protocols.hpp"
#include "cobit/random.hpp"
#include "cobit/serialize.hpp"

namespace cobit::rsp {

namespace {

namespace cal = cobit::calculus;

Vec checked_state(const Vec& v, int d) {
  if (v.size() != d)
    throw std::invalid_argument("state dimension does not match the covering set");
  double n2 = v.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-9) throw std::invalid_argument("state is not normalized");
  return v / std::sqrt(n2);
}

int exact_log2(long long v) {
  if (v < 1 || (v & (v - 1)) != 0) return -1;
  int bits = 0;
  while (v > 1) {
    v >>= 1;
    ++bits;
  }
  return bits;
}

void validate_cover(const CoveringSet& cover) {
  if (cover.d < 2) throw std::invalid_argument("covering dimension must be >= 2");
  if (cover.n < 1 || static_cast<int>(cover.unitaries.size()) != cover.n)
    throw std::invalid_argument("covering must list exactly n unitaries");
  if (cover.epsilon < 0.0) throw std::invalid_argument("covering slack must be nonnegative");
  for (const Mat& u : cover.unitaries) {
    if (u.rows() != cover.d || u.cols() != cover.d)
      throw std::invalid_argument("covering unitaries must be d x d");
    if ((u.adjoint() * u - Mat::Identity(cover.d, cover.d)).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("covering contains a non-unitary matrix");
  }
}

}  // namespace

CoveringSet pauli_cover() {
  CoveringSet cover;
  cover.d = 2;
  cover.n = 4;
  cover.epsilon = 0.0;
  auto p = gates::paulis();
  cover.unitaries.assign(p.begin(), p.end());
  return cover;
}

CoveringSet sample_covering(int d, int n, std::mt19937_64& rng, int test_states) {
  if (d < 2) throw std::invalid_argument("covering dimension must be >= 2");
  if (n < d * d)
    throw std::invalid_argument("need at least d^2 unitaries to cover dimension d");
  if (test_states < 1) throw std::invalid_argument("need at least one probe state");

  CoveringSet cover;
  cover.d = d;
  cover.n = n;
  cover.unitaries.reserve(n);
  for (int k = 0; k < n; ++k) cover.unitaries.push_back(haar_unitary(d, rng));

  double worst = 0.0;
  for (int s = 0; s < test_states; ++s) {
    Vec psi = haar_vector(d, rng);
    Mat mean = Mat::Zero(d, d);
    for (const Mat& u : cover.unitaries) {
      Vec rotated = u * psi;
      mean += rotated * rotated.adjoint();
    }
    mean /= static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Mat> eig(mean, Eigen::EigenvaluesOnly);
    double slack = d * eig.eigenvalues().maxCoeff() - 1.0;
    worst = std::max(worst, 2.0 * slack);
  }
  cover.epsilon = 1.1 * worst;
  return cover;
}

nlohmann::json covering_to_json(const CoveringSet& cover) {
  nlohmann::json us = nlohmann::json::array();
  for (const Mat& u : cover.unitaries) us.push_back(matrix_to_json(u));
  return {{"d", cover.d}, {"n", cover.n}, {"epsilon", cover.epsilon}, {"unitaries", us}};
}

CoveringSet covering_from_json(const nlohmann::json& j) {
  CoveringSet cover;
  cover.d = j.at("d").get<int>();
  cover.n = j.at("n").get<int>();
  cover.epsilon = j.at("epsilon").get<double>();
  for (const auto& u : j.at("unitaries"))
    cover.unitaries.push_back(matrix_from_json(u, cover.d, cover.d));
  validate_cover(cover);
  return cover;
}

Povm build_povm(const CoveringSet& cover, const Vec& psi) {
  validate_cover(cover);
  Vec in = checked_state(psi, cover.d);
  double scale = cover.d / (cover.n * (1.0 + cover.epsilon / 2.0));

  std::vector<PovmElement> elems;
  elems.reserve(cover.n + 1);
  Mat fail = Mat::Identity(cover.d, cover.d);
  for (int k = 0; k < cover.n; ++k) {
    Vec rotated = cover.unitaries[k] * in;
    Mat accept = scale * (rotated * rotated.adjoint()).transpose();
    fail -= accept;
    elems.push_back({"accept-" + std::to_string(k), std::move(accept)});
  }
  double fail_trace = fail.trace().real();
  if (fail_trace > cover.d * cover.epsilon + 1e-12)
    throw std::domain_error("covering slack exceeded: failure element trace too large");
  elems.push_back({"fail", std::move(fail)});
  try {
    return Povm(std::move(elems));
  } catch (const std::invalid_argument& e) {
    throw std::domain_error(std::string("covering slack exceeded for this state: ") +
                            e.what());
  }
}

RspResult run_coherent_rsp(const Vec& psi, const CoveringSet& cover, std::mt19937_64& rng) {
  validate_cover(cover);
  Vec in = checked_state(psi, cover.d);
  int d = cover.d;
  int n = cover.n;

  RspResult out;
  protocols::Transcript& t = out.transcript;
  t.protocol = "coherent-remote-state-preparation";

  RspAccount account = rsp_resource_account(cover);
  if (!account.exact)
    t.status = "non-dyadic dimensions; resource counts not representable exactly";

  PureState s = make_bell(d, "a", "b");
  t.note("share a maximally entangled state of dimension " + std::to_string(d) + " (a, b)",
         "prepare", {"a", "b"});
  if (account.exact) {
    t.catalysts = account.catalysts;
    if (!account.catalysts.empty())
      t.note("borrow " + account.catalysts.to_string() + " as catalyst", "borrow", {"a", "b"});
  }

  Povm povm = build_povm(cover, in);
  s = apply(s, neumark_dilate(povm), {"a"}, Subsystem{"o", Party::A, n + 1});
  t.note("Alice applies the preparation POVM coherently, recording the outcome in o",
         "coherent-measure", {"a", "o"});

  Mat succ = Mat::Zero(n + 1, n + 1);
  for (int k = 0; k < n; ++k) succ(k, k) = 1.0;
  Mat failp = Mat::Zero(n + 1, n + 1);
  failp(n, n) = 1.0;
  Povm coarse({{"success", std::move(succ)}, {"fail", std::move(failp)}});
  out.fail_probability = born_probabilities(s, coarse, {"o"})[1];

  MeasureResult mr = measure(s, coarse, {"o"}, rng);
  if (mr.label == "fail") {
    t.note("the failure outcome fired; the shared state is lost", "measure", {"o"});
    t.status = "failure outcome; retry with a fresh entangled state";
    if (account.exact) {
      t.catalysts = cal::ResourceVector{};
      t.consumed = cal::ResourceVector{};
      t.consumed.add(cal::ebit(), exact_log2(d));
    }
    t.final_fidelity = 0.0;
    t.final_state = mr.post;
    out.success = false;
    out.fidelity = 0.0;
    return out;
  }
  s = mr.post;
  t.note("the success outcome fired (failure probability " +
             std::to_string(out.fail_probability) + ")",
         "measure", {"o"});

  s = truncate_subsystem(s, "o", n);
  t.note("drop the now-empty failure level of the outcome register", "truncate", {"o"});

  std::vector<Mat> undo;
  undo.reserve(n);
  for (const Mat& u : cover.unitaries) undo.push_back(u.transpose());
  s = apply_controlled(s, "o", undo, "a");
  t.note("Alice applies the transposed covering rotation controlled on o", "controlled-unitary",
         {"o", "a"});

  s = drop_subsystem(s, "a", in.conjugate());
  t.note("Alice's register factors out in the conjugated input state; discard it", "discard",
         {"a"});

  s = protocols::coherent_copy(s, "o", "o_cp", Party::B);
  if (account.exact) t.consumed = account.consumed;
  t.note("copy the outcome register to Bob through coherent classical channels",
         "coherent-copy", {"o", "o_cp"});

  std::vector<Mat> fix;
  fix.reserve(n);
  for (const Mat& u : cover.unitaries) fix.push_back(u.adjoint());
  s = apply_controlled(s, "o_cp", fix, "b");
  t.note("Bob applies the inverse covering rotation controlled on his copy",
         "controlled-unitary", {"o_cp", "b"});

  if (account.exact) {
    t.produced = account.produced;
    if (!account.catalysts.empty())
      t.note("the outcome registers repay the borrowed catalyst", "return", {"o", "o_cp"});
  }

  // Ideal outcome: Phi_n across (o, o_cp) with psi delivered at b. Layout
  // order is (b, o, o_cp).
  Vec target = Vec::Zero(static_cast<long long>(d) * n * n);
  double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < n; ++k)
      target((static_cast<long long>(i) * n + k) * n + k) = c * in(i);
  PureState ideal(s.layout(), std::move(target));
  t.final_fidelity = fidelity(s, ideal);
  t.target_description =
      "input state prepared at Bob plus a maximally entangled outcome pair";
  t.final_state = std::move(s);

  out.success = true;
  out.fidelity = t.final_fidelity;
  return out;
}

RspAccount rsp_resource_account(const CoveringSet& cover) {
  RspAccount acc;
  int ln = exact_log2(cover.n);
  int ld = exact_log2(cover.d);
  if (ln < 0 || ld < 0) return acc;
  acc.exact = true;
  int cat = std::min(ld, ln);
  acc.consumed.add(cal::cobit_fwd(), ln);
  if (ld > cat) acc.consumed.add(cal::ebit(), ld - cat);
  acc.produced.add(cal::remote_qubit(), ld);
  if (ln > cat) acc.produced.add(cal::ebit(), ln - cat);
  acc.catalysts.add(cal::ebit(), cat);
  return acc;
}

}  // namespace cobit::rsp
