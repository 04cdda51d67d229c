// Acceptance suite: one check per shipping criterion, each printed as a
// single [PASS]/[FAIL] line with its runtime. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cobit/calculus/certify.hpp"
#include "cobit/calculus/prove.hpp"
#include "cobit/calculus/resource.hpp"
#include "cobit/calculus/rules.hpp"
#include "cobit/capacity/capacity.hpp"
#include "cobit/gates.hpp"
#include "cobit/ops.hpp"
#include "cobit/protocols/protocols.hpp"
#include "cobit/random.hpp"
#include "cobit/rsp.hpp"
#include "cobit/types.hpp"

namespace {

using cobit::Mat;
using cobit::Party;
using cobit::PureState;
using cobit::Subsystem;
using cobit::Vec;
using Fails = std::vector<std::string>;
namespace cal = cobit::calculus;
namespace cap = cobit::capacity;
namespace gates = cobit::gates;
namespace protocols = cobit::protocols;
namespace rsp = cobit::rsp;

constexpr std::uint64_t kSeed = 20250814;

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, value);
  return buf;
}

void expect(Fails& fails, bool ok, const std::string& what) {
  if (!ok) fails.push_back(what);
}

long long slot(const cobit::RegisterLayout& layout, const std::string& label) {
  return layout.stride(layout.position(label));
}

double fidelity_against(const Vec& ideal, const PureState& state) {
  return std::norm(ideal.dot(state.amplitudes()));
}

double binomial_coefficient(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// --- criterion 1: coherent superdense coding -------------------------------

Vec superdense_ideal(const Vec& message, const PureState& fin) {
  const cobit::RegisterLayout& l = fin.layout();
  Vec ideal = Vec::Zero(fin.dim());
  for (int x = 0; x < 4; ++x) {
    int hi = x >> 1, lo = x & 1;
    long long idx = hi * slot(l, "m1") + lo * slot(l, "m2") +
                    hi * slot(l, "e1") + lo * slot(l, "e2");
    ideal[idx] = message[x];
  }
  return ideal;
}

Fails criterion_superdense() {
  Fails fails;
  const cal::ResourceVector used = cal::parse_resources("1 qubit-> + 1 ebit");
  const cal::ResourceVector made = cal::parse_resources("2 cobit->");

  std::vector<Vec> messages;
  for (int x = 0; x < 4; ++x) messages.push_back(Vec::Unit(4, x));
  std::mt19937_64 rng = cobit::substream(kSeed, "a1-messages");
  for (int i = 0; i < 100; ++i) messages.push_back(cobit::haar_vector(4, rng));

  double worst = 1.0;
  for (const Vec& msg : messages) {
    protocols::Transcript t = protocols::coherent_superdense_coding(msg);
    const PureState& fin = *t.final_state;
    worst = std::min(worst, fidelity_against(superdense_ideal(msg, fin), fin));
    expect(fails, t.consumed == used && t.produced == made && t.catalysts.empty(),
           "ledger must be exactly 1 qubit-> + 1 ebit => 2 cobit->");
    if (!fails.empty()) break;
  }
  expect(fails, worst >= 1.0 - 1e-10,
         "worst doubled-channel fidelity " + fmt("%.12f", worst) + " < 1 - 1e-10");
  return fails;
}

// --- criterion 2: coherent teleportation and its reversal ------------------

Vec teleport_ideal(const Vec& psi, const PureState& fin) {
  const cobit::RegisterLayout& l = fin.layout();
  Vec ideal = Vec::Zero(fin.dim());
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v)
      for (int i = 0; i < 2; ++i) {
        long long idx = u * slot(l, "s") + v * slot(l, "e1") + i * slot(l, "e2") +
                        u * slot(l, "s_cp") + v * slot(l, "e1_cp");
        ideal[idx] = 0.5 * psi[i];
      }
  return ideal;
}

Fails criterion_teleport() {
  Fails fails;
  const cal::ResourceVector pair_and_channel = cal::parse_resources("1 qubit-> + 1 ebit");
  const cal::ResourceVector one_ebit = cal::parse_resources("1 ebit");

  std::mt19937_64 rng = cobit::substream(kSeed, "a2-inputs");
  double worst = 1.0, worst_loop = 1.0;
  for (int i = 0; i < 100; ++i) {
    Vec psi = cobit::haar_vector(2, rng);
    protocols::Transcript t = protocols::coherent_teleportation(psi);
    worst = std::min(worst, fidelity_against(teleport_ideal(psi, *t.final_state), *t.final_state));
    expect(fails,
           t.consumed == cal::parse_resources("2 cobit->") &&
               t.produced == pair_and_channel && t.catalysts == one_ebit,
           "ledger must be exactly 2 cobit-> => 1 qubit-> + 1 ebit (cat 1 ebit)");

    protocols::Transcript loop =
        protocols::coherent_teleportation(psi, protocols::CobitProvider::SuperdenseCoding);
    worst_loop = std::min(worst_loop, loop.final_fidelity);
    expect(fails,
           loop.consumed == pair_and_channel && loop.produced == pair_and_channel &&
               loop.catalysts == one_ebit,
           "the inlined-superdense run must consume and regenerate 1 qubit-> + 1 ebit");
    if (!fails.empty()) break;
  }
  expect(fails, worst >= 1.0 - 1e-10,
         "worst teleportation fidelity " + fmt("%.12f", worst) + " < 1 - 1e-10");
  expect(fails, worst_loop >= 1.0 - 1e-9,
         "worst reversibility-loop fidelity " + fmt("%.12f", worst_loop) + " < 1 - 1e-9");
  return fails;
}

// --- criterion 3: the two-qubit exchange identity --------------------------

Fails criterion_exchange_identity() {
  Fails fails;
  const Mat y = gates::pauli_y(), z = gates::pauli_z();

  // Algebraic form on one shared pair: encoding with Y^a Z^b, then CNOT and a
  // Hadamard, lands on |a xor b>|a> with global phase i^a (-1)^(a + ab).
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      PureState s = cobit::make_bell(2, "u", "v");
      if (a) s = cobit::apply(s, y, {"u"});
      if (b) s = cobit::apply(s, z, {"v"});
      s = cobit::apply(s, gates::cnot(), {"u", "v"});
      s = cobit::apply(s, gates::hadamard(), {"u"});
      cobit::cplx phase = std::pow(cobit::cplx(0, 1), a) * ((a + a * b) % 2 ? -1.0 : 1.0);
      Vec ideal = Vec::Zero(4);
      ideal[((a ^ b) << 1) | a] = phase;
      double err = (s.amplitudes() - ideal).cwiseAbs().maxCoeff();
      expect(fails, err <= 1e-12,
             "algebraic identity off by " + fmt("%.3e", err) + " at a=" +
                 std::to_string(a) + " b=" + std::to_string(b));
    }

  // Protocol form: running the identity in both directions with the local
  // phase completion leaves |a>|b>|b>|a> exactly, coefficient +1.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      protocols::Transcript t =
          protocols::cnot_to_coherent_bidirectional(Vec::Unit(4, a * 2 + b));
      const PureState& fin = *t.final_state;
      const cobit::RegisterLayout& l = fin.layout();
      Vec ideal = Vec::Zero(fin.dim());
      ideal[a * slot(l, "a") + b * slot(l, "b") + b * slot(l, "e1") + a * slot(l, "e2")] = 1.0;
      double err = (fin.amplitudes() - ideal).cwiseAbs().maxCoeff();
      expect(fails, err <= 1e-12,
             "protocol output off by " + fmt("%.3e", err) + " at a=" +
                 std::to_string(a) + " b=" + std::to_string(b));
      expect(fails,
             t.consumed == cal::parse_resources("1 cnot + 1 ebit") &&
                 t.produced == cal::parse_resources("1 cobit-> + 1 cobit<-") &&
                 t.catalysts.empty(),
             "ledger must be exactly 1 cnot + 1 ebit => 1 cobit-> + 1 cobit<-");
    }
  return fails;
}

// --- criterion 4: distributed controlled-NOT -------------------------------

Fails criterion_distributed_cnot() {
  Fails fails;
  std::vector<Vec> inputs;
  for (int i = 0; i < 4; ++i) inputs.push_back(Vec::Unit(4, i));
  inputs.push_back((Vec::Unit(4, 0) + Vec::Unit(4, 2)) / std::sqrt(2.0));

  for (const Vec& joint : inputs) {
    protocols::Transcript t = protocols::coherent_distributed_cnot(joint);
    const PureState& fin = *t.final_state;

    Vec expected = gates::cnot() * joint;
    cobit::DensityMatrix data = cobit::partial_trace_labels(fin, {"x", "y"});
    double match = std::real((expected.adjoint() * data.matrix() * expected)(0));
    expect(fails, match >= 1.0 - 1e-9,
           "data registers miss CNOT(input): fidelity " + fmt("%.12f", match));

    cobit::DensityMatrix anc = cobit::partial_trace_labels(fin, {"e1", "e2_cp"});
    double ent = cobit::von_neumann_entropy(anc);
    expect(fails, std::abs(ent - 2.0) <= 1e-9,
           "ancilla entanglement " + fmt("%.12f", ent) + " bits != 2.0 +- 1e-9");

    expect(fails,
           t.consumed == cal::parse_resources("1 cobit-> + 1 cobit<-") &&
               t.produced == cal::parse_resources("1 cnot + 1 ebit") &&
               t.catalysts == cal::parse_resources("1 ebit"),
           "ledger must be 1 cobit-> + 1 cobit<- => 1 cnot + 1 ebit (cat 1 ebit)");
  }
  return fails;
}

// --- criterion 5: entanglement concentration statistics --------------------

Fails criterion_concentration() {
  Fails fails;
  const int shots = 20000, copies = 4;
  for (double p : {0.5, 0.7}) {
    Vec pair = Vec::Zero(4);
    pair[0] = std::sqrt(p);
    pair[3] = std::sqrt(1.0 - p);
    std::mt19937_64 rng =
        cobit::substream(kSeed, p == 0.5 ? "a5-balanced" : "a5-biased");

    std::vector<long long> counts(copies + 1, 0);
    double worst_entropy_err = 0.0;
    for (int s = 0; s < shots; ++s) {
      protocols::ConcentrationResult r = protocols::entanglement_concentrate(pair, copies, rng);
      ++counts[r.weight];
      double target = std::log2(binomial_coefficient(copies, r.weight));
      worst_entropy_err = std::max(worst_entropy_err, std::abs(r.entropy_bits - target));
    }
    expect(fails, worst_entropy_err <= 1e-9,
           "post-measurement entropy misses log2 C(4,k) by " + fmt("%.3e", worst_entropy_err));

    for (int k = 0; k <= copies; ++k) {
      double q = binomial_coefficient(copies, k) * std::pow(1.0 - p, k) * std::pow(p, copies - k);
      double sigma = std::sqrt(shots * q * (1.0 - q));
      double dev = std::abs(counts[k] - shots * q);
      expect(fails, dev <= 3.0 * sigma,
             "weight " + std::to_string(k) + " at p=" + fmt("%.1f", p) + " drifts " +
                 fmt("%.2f", dev / sigma) + " sigma from binomial");
    }
  }
  return fails;
}

// --- criterion 6: remote preparation with the exact qubit cover ------------

Vec rsp_ideal(const Vec& psi, int n, const PureState& fin) {
  const cobit::RegisterLayout& l = fin.layout();
  Vec ideal = Vec::Zero(fin.dim());
  double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < psi.size(); ++i)
    for (int k = 0; k < n; ++k)
      ideal[i * slot(l, "b") + k * slot(l, "o") + k * slot(l, "o_cp")] = amp * psi[i];
  return ideal;
}

Fails criterion_rsp_exact() {
  Fails fails;
  rsp::CoveringSet cover = rsp::pauli_cover();
  expect(fails, cover.epsilon == 0.0, "the Pauli cover must certify zero slack");

  for (std::uint64_t run = 0; run < 5; ++run) {
    std::mt19937_64 in_rng = cobit::substream(kSeed, "a6-psi", run);
    Vec psi = cobit::haar_vector(2, in_rng);

    cobit::Povm povm = rsp::build_povm(cover, psi);
    expect(fails, povm.elements().back().op.norm() <= 1e-12,
           "the failure element must vanish for the exact cover");

    std::mt19937_64 rng = cobit::substream(kSeed, "a6-round", run);
    rsp::RspResult r = rsp::run_coherent_rsp(psi, cover, rng);
    expect(fails, r.success && r.fail_probability <= 1e-12,
           "every exact-cover round must succeed with certainty");
    expect(fails, r.fidelity >= 1.0 - 1e-9,
           "reported fidelity " + fmt("%.12f", r.fidelity) + " < 1 - 1e-9");
    double direct = fidelity_against(rsp_ideal(psi, cover.n, *r.transcript.final_state),
                                     *r.transcript.final_state);
    expect(fails, direct >= 1.0 - 1e-9,
           "final state misses psi at Bob + maximally entangled outcome registers");
  }

  rsp::RspAccount account = rsp::rsp_resource_account(cover);
  expect(fails,
         account.exact && account.consumed == cal::parse_resources("2 cobit->") &&
             account.produced == cal::parse_resources("1 remote-qubit + 1 ebit") &&
             account.catalysts == cal::parse_resources("1 ebit"),
         "ledger must be exactly 2 cobit-> => 1 remote-qubit + 1 ebit (cat 1 ebit)");
  return fails;
}

// --- criterion 7: remote preparation with a sampled cover ------------------

Fails criterion_rsp_sampled() {
  Fails fails;
  const int runs = 200, n = 128;

  std::mt19937_64 cover_rng = cobit::substream(kSeed, "a7-cover");
  rsp::CoveringSet cover = rsp::sample_covering(2, n, cover_rng);
  std::mt19937_64 replay_rng = cobit::substream(kSeed, "a7-cover");
  rsp::CoveringSet replay = rsp::sample_covering(2, n, replay_rng);
  bool reproduced = cover.epsilon == replay.epsilon && cover.n == replay.n;
  for (int k = 0; reproduced && k < n; ++k)
    reproduced = (cover.unitaries[k] - replay.unitaries[k]).squaredNorm() == 0.0;
  expect(fails, reproduced, "re-sampling from the same seed must reproduce the cover bit-exactly");

  int failures = 0;
  double worst_fidelity = 1.0, worst_entropy_err = 0.0;
  for (std::uint64_t k = 0; k < runs; ++k) {
    std::mt19937_64 in_rng = cobit::substream(kSeed, "a7-psi", k);
    Vec psi = cobit::haar_vector(2, in_rng);
    std::mt19937_64 rng = cobit::substream(kSeed, "a7-round", k);
    rsp::RspResult r = rsp::run_coherent_rsp(psi, cover, rng);
    if (!r.success) {
      ++failures;
      continue;
    }
    worst_fidelity = std::min(worst_fidelity, r.fidelity);
    double ent = cobit::schmidt_labels(*r.transcript.final_state, {"o"}).entropy_bits;
    worst_entropy_err = std::max(worst_entropy_err, std::abs(ent - 7.0));
  }
  double rate = static_cast<double>(failures) / runs;
  expect(fails, rate <= cover.epsilon,
         "failure rate " + fmt("%.4f", rate) + " above the certified slack " +
             fmt("%.4f", cover.epsilon));
  expect(fails, worst_fidelity >= 1.0 - 1e-9,
         "worst success fidelity " + fmt("%.12f", worst_fidelity) + " < 1 - 1e-9");
  expect(fails, worst_entropy_err <= 1e-6,
         "outcome-register entanglement misses 7 bits by " + fmt("%.3e", worst_entropy_err));
  return fails;
}

// --- criterion 8: derivations and refusals ---------------------------------

Fails criterion_prover() {
  Fails fails;
  using clock = std::chrono::steady_clock;

  auto timed = [&fails](const std::string& what, const std::function<bool()>& go) {
    clock::time_point start = clock::now();
    bool ok = go();
    double secs = std::chrono::duration<double>(clock::now() - start).count();
    expect(fails, ok, what);
    expect(fails, secs < 1.0, what + " exceeded 1 s (" + fmt("%.2f", secs) + " s)");
  };

  auto equal_with_cat = [](const char* lhs, const char* rhs, const char* cat) {
    cal::ProveOptions opts;
    opts.catalyst_budget = cal::parse_resources(cat);
    return cal::check_equality(cal::parse_resources(lhs), cal::parse_resources(rhs), opts).equal;
  };
  auto derives = [](const char* lhs, const char* rhs) {
    return cal::prove(cal::parse_resources(lhs), cal::parse_resources(rhs)).status ==
           cal::ProveStatus::Found;
  };
  auto refuses = [](const char* lhs, const char* rhs) {
    return cal::prove(cal::parse_resources(lhs), cal::parse_resources(rhs)).status ==
           cal::ProveStatus::NotFound;
  };

  timed("2 cobit-> == 1 qubit-> + 1 ebit (cat 1 ebit)",
        [&] { return equal_with_cat("2 cobit->", "1 qubit-> + 1 ebit", "1 ebit"); });
  timed("1 cnot + 1 ebit == 1 cobit-> + 1 cobit<- (cat 1 ebit)",
        [&] { return equal_with_cat("1 cnot + 1 ebit", "1 cobit-> + 1 cobit<-", "1 ebit"); });
  timed("2 cnot == 1 swap (cat 3 ebit)",
        [&] { return equal_with_cat("2 cnot", "1 swap", "3 ebit"); });
  timed("1 qubit-> >= 1 cbit->", [&] { return derives("1 qubit->", "1 cbit->"); });
  timed("refuses 1 cbit-> >= 1 cobit->", [&] { return refuses("1 cbit->", "1 cobit->"); });
  timed("refuses 1 cbit-> >= 1 ebit", [&] { return refuses("1 cbit->", "1 ebit"); });
  return fails;
}

// --- criterion 9: simulation certificates ----------------------------------

Fails criterion_certification() {
  Fails fails;
  std::vector<cal::CertificationResult> results = cal::certify_all_simulable(kSeed);
  expect(fails, results.size() == 6,
         "expected 6 simulable rules, saw " + std::to_string(results.size()));
  for (const cal::CertificationResult& r : results)
    expect(fails, r.passed && r.fidelity >= 1.0 - 1e-9,
           "rule '" + r.rule_id + "' failed certification: " + r.detail);
  return fails;
}

// --- criterion 10: the gain optimizer ---------------------------------------

Fails criterion_capacity() {
  Fails fails;
  cap::DeltaChiOptions opts;
  opts.restarts = 32;

  cap::GateSpec id = cap::identity_spec();
  for (double e : {0.0, 1.0, 2.0}) {
    double v = cap::delta_chi_e(id, e, opts).value;
    expect(fails, std::abs(v) <= 1e-9,
           "identity gate reports gain " + fmt("%.3e", v) + " at allowance " + fmt("%.0f", e));
  }

  cap::GateSpec cnot = cap::cnot_spec();
  double witness = cap::delta_chi_of(cnot, cap::witness_bell_basis());
  double at0 = cap::delta_chi_e(cnot, 0.0, opts).value;
  double at1 = cap::delta_chi_e(cnot, 1.0, opts).value;
  expect(fails, at0 >= 1.0 - 1e-6, "CNOT gain at zero allowance " + fmt("%.8f", at0) + " < 1 - 1e-6");
  expect(fails, at1 >= witness - 1e-6,
         "CNOT gain at allowance 1 " + fmt("%.8f", at1) + " below the exact witness " +
             fmt("%.8f", witness));

  cap::ConcavityReport scan = cap::concavity_scan(cnot, {0.0, 0.5, 1.0}, opts);
  expect(fails, scan.worst_violation <= 1e-3,
         "concavity violated by " + fmt("%.3e", scan.worst_violation));

  cap::QeResult qe = cap::solve_qe(cnot, 0.0, opts);
  expect(fails, qe.residual <= 2e-3,
         "balanced-rate fixed point residual " + fmt("%.3e", qe.residual) + " > 2e-3");
  return fails;
}

// --- criterion 11: randomized core invariants -------------------------------

cobit::Povm random_povm(int d, int elements, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Mat> raw(elements);
  Mat sum = Mat::Zero(d, d);
  for (Mat& m : raw) {
    Mat g(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) g(r, c) = cobit::cplx(normal(rng), normal(rng));
    m = g * g.adjoint();
    sum += m;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(sum);
  Mat w = es.operatorInverseSqrt();
  std::vector<cobit::PovmElement> povm;
  for (int i = 0; i < elements; ++i) {
    Mat a = w * raw[i] * w;
    povm.push_back({"k" + std::to_string(i), 0.5 * (a + Mat(a.adjoint()))});
  }
  return cobit::Povm(std::move(povm));
}

Fails criterion_invariants() {
  Fails fails;
  std::mt19937_64 rng = cobit::substream(kSeed, "a11");
  for (int i = 0; i < 1000 && fails.empty(); ++i) {
    int d = 2 + i % 3;
    switch (i % 4) {
      case 0: {  // unitaries preserve the norm
        cobit::RegisterLayout layout({{"q", Party::A, d}, {"r", Party::B, 2}});
        PureState psi(layout, cobit::haar_vector(2 * d, rng));
        PureState out = cobit::apply(psi, gates::kron(cobit::haar_unitary(d, rng),
                                                      cobit::haar_unitary(2, rng)),
                                     {"q", "r"});
        expect(fails, std::abs(out.amplitudes().norm() - 1.0) <= 1e-10,
               "case " + std::to_string(i) + ": norm drifted under a unitary");
        break;
      }
      case 1: {  // randomized measurements stay complete
        cobit::Povm povm = random_povm(d, 3, rng);
        Mat total = Mat::Zero(d, d);
        for (const cobit::PovmElement& el : povm.elements()) total += el.op;
        expect(fails, (total - Mat::Identity(d, d)).norm() <= 1e-10,
               "case " + std::to_string(i) + ": measurement elements do not resolve identity");
        break;
      }
      case 2: {  // dilating a measurement preserves its statistics
        cobit::Povm povm = random_povm(d, 3, rng);
        cobit::RegisterLayout layout({{"q", Party::A, d}});
        PureState psi(layout, cobit::haar_vector(d, rng));
        std::vector<double> direct = cobit::born_probabilities(psi, povm, {"q"});
        PureState dilated = cobit::apply(psi, cobit::neumark_dilate(povm), {"q"},
                                         Subsystem{"out", Party::Ancilla, povm.size()});
        Eigen::VectorXd lifted =
            cobit::partial_trace_labels(dilated, {"out"}).matrix().diagonal().real();
        double err = 0.0;
        for (int k = 0; k < povm.size(); ++k) err = std::max(err, std::abs(direct[k] - lifted[k]));
        expect(fails, err <= 1e-10,
               "case " + std::to_string(i) + ": dilated statistics drift by " + fmt("%.3e", err));
        break;
      }
      default: {  // operators slide across a maximally entangled pair transposed
        std::normal_distribution<double> normal;
        Mat o(d, d);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) o(r, c) = cobit::cplx(normal(rng), normal(rng));
        PureState phi = cobit::make_bell(d);
        Vec left = cobit::apply_operator(phi, o, {"a"}).amplitudes;
        Vec right = cobit::apply_operator(phi, o.transpose(), {"b"}).amplitudes;
        expect(fails, (left - right).norm() <= 1e-10 * (1.0 + left.norm()),
               "case " + std::to_string(i) + ": transpose slide identity broken");
        break;
      }
    }
  }
  return fails;
}

struct Criterion {
  std::string name;
  std::function<Fails()> run;
  double limit_seconds = 0.0;  // 0 = no wall-clock requirement
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"coherent superdense coding doubles a classical channel", criterion_superdense, 1.0},
      {"coherent teleportation closes the reversibility loop", criterion_teleport, 2.0},
      {"two-qubit exchange identity, algebraic and distributed", criterion_exchange_identity, 0.0},
      {"distributed CNOT from two coherent channels", criterion_distributed_cnot, 0.0},
      {"entanglement concentration matches binomial statistics", criterion_concentration, 0.0},
      {"remote preparation, exact qubit cover", criterion_rsp_exact, 0.0},
      {"remote preparation, sampled 128-unitary cover", criterion_rsp_sampled, 30.0},
      {"resource derivations and refusals", criterion_prover, 0.0},
      {"simulation certificates for every simulable rule", criterion_certification, 0.0},
      {"entanglement-assisted gain optimizer", criterion_capacity, 300.0},
      {"randomized core invariants", criterion_invariants, 10.0},
  };

  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    Fails fails;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    try {
      fails = c.run();
    } catch (const std::exception& e) {
      fails.push_back(std::string("unexpected exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && secs > c.limit_seconds)
      fails.push_back("runtime " + fmt("%.2f", secs) + " s exceeds the " +
                      fmt("%.0f", c.limit_seconds) + " s budget");

    std::printf("[%s] criterion %2zu: %s (%.2f s)\n", fails.empty() ? "PASS" : "FAIL", i + 1,
                c.name.c_str(), secs);
    for (const std::string& f : fails) std::printf("         - %s\n", f.c_str());
    all_ok = all_ok && fails.empty();
  }
  std::printf("%s\n", all_ok ? "acceptance: all criteria passed"
                             : "acceptance: FAILURES listed above");
  return all_ok ? 0 : 1;
}
