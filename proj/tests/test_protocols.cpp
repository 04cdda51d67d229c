#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cobit/calculus/resource.hpp"
#include "cobit/ops.hpp"
#include "cobit/protocols/protocols.hpp"
#include "cobit/random.hpp"

using namespace cobit;
using namespace cobit::protocols;
using calculus::parse_resources;

namespace {

Vec basis4(int i) {
  Vec v = Vec::Zero(4);
  v(i) = 1.0;
  return v;
}

// flat index of a basis assignment in the transcript's final layout
long long index_of(const PureState& s, const std::vector<std::pair<std::string, int>>& values) {
  long long idx = 0;
  for (const auto& [label, value] : values)
    idx += s.layout().stride(s.layout().position(label)) * value;
  return idx;
}

void check_definite(const PureState& s, long long hot, double tol) {
  for (long long i = 0; i < s.dim(); ++i) {
    double want = (i == hot) ? 1.0 : 0.0;
    CHECK(std::abs(s.amplitudes()(i) - want) < tol);
  }
}

}  // namespace

TEST_CASE("superdense coding maps every basis message exactly") {
  for (int x = 0; x < 4; ++x) {
    Transcript t = coherent_superdense_coding(basis4(x));
    CHECK(t.status == "ok");
    CHECK(t.final_fidelity >= 1.0 - 1e-10);
    REQUIRE(t.final_state.has_value());
    const PureState& s = *t.final_state;
    // both sides hold the two message bits: (m1 m2) = (e1 e2) = x
    long long hot = index_of(s, {{"m1", x >> 1}, {"m2", x & 1}, {"e1", x >> 1}, {"e2", x & 1}});
    check_definite(s, hot, 1e-12);
  }
}

TEST_CASE("superdense coding is coherent on superpositions") {
  Vec ghzish = Vec::Zero(4);
  ghzish(0) = 1.0 / std::sqrt(2.0);
  ghzish(3) = 1.0 / std::sqrt(2.0);
  Transcript t = coherent_superdense_coding(ghzish);
  CHECK(t.final_fidelity >= 1.0 - 1e-10);
  const PureState& s = *t.final_state;
  long long h0 = index_of(s, {{"m1", 0}, {"m2", 0}, {"e1", 0}, {"e2", 0}});
  long long h3 = index_of(s, {{"m1", 1}, {"m2", 1}, {"e1", 1}, {"e2", 1}});
  CHECK(std::abs(s.amplitudes()(h0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(s.amplitudes()(h3) - 1.0 / std::sqrt(2.0)) < 1e-12);
  // the two coherent channel outputs carry all the entanglement with nothing leaked
  CHECK(schmidt(s, {Party::A}).entropy_bits == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("superdense coding ledger") {
  Transcript t = coherent_superdense_coding(basis4(1));
  CHECK(t.consumed == parse_resources("1 qubit-> + 1 ebit"));
  CHECK(t.produced == parse_resources("2 cobit->"));
  CHECK(t.catalysts.empty());
}

TEST_CASE("superdense coding validates its inputs") {
  Vec bad = Vec::Zero(4);
  bad(0) = 2.0;
  CHECK_THROWS_AS(coherent_superdense_coding(bad), std::invalid_argument);
  CHECK_THROWS_AS(coherent_superdense_coding(Vec::Zero(3)), std::invalid_argument);

  // a provided shared state must be a Bell pair held A then B
  RegisterLayout l({{"p", Party::A, 2}, {"q", Party::B, 2}});
  Vec zz = Vec::Zero(4);
  zz(0) = 1.0;
  CHECK_THROWS_AS(coherent_superdense_coding(basis4(0), PureState(l, zz)),
                  std::invalid_argument);
  PureState bell = make_bell(2, "p", "q");
  CHECK_NOTHROW(coherent_superdense_coding(basis4(0), bell));
}

TEST_CASE("teleportation hits unit fidelity on random inputs") {
  std::mt19937_64 rng = substream(21, "teleport-inputs");
  for (int trial = 0; trial < 25; ++trial) {
    Vec psi = haar_vector(2, rng);
    Transcript t = coherent_teleportation(psi);
    CHECK(t.final_fidelity >= 1.0 - 1e-10);
    CHECK(t.consumed == parse_resources("2 cobit->"));
    CHECK(t.produced == parse_resources("1 qubit-> + 1 ebit"));
    CHECK(t.catalysts == parse_resources("1 ebit"));
    // the state arrives at Bob's data register, both Bell pairs intact
    const PureState& s = *t.final_state;
    CHECK(schmidt(s, {Party::A}).entropy_bits == doctest::Approx(2.0).epsilon(1e-9));
    DensityMatrix at_bob = partial_trace_labels(s, {"e2"});
    Mat expected = psi * psi.adjoint();
    CHECK((at_bob.matrix() - expected).norm() < 1e-9);
  }
}

TEST_CASE("teleportation over superdense coding regenerates what it consumes") {
  std::mt19937_64 rng = substream(22, "teleport-sdc");
  Vec psi = haar_vector(2, rng);
  Transcript t = coherent_teleportation(psi, CobitProvider::SuperdenseCoding);
  CHECK(t.final_fidelity >= 1.0 - 1e-10);
  CHECK(t.consumed == parse_resources("1 qubit-> + 1 ebit"));
  CHECK(t.produced == parse_resources("1 qubit-> + 1 ebit"));
  CHECK(t.catalysts == parse_resources("1 ebit"));
}

TEST_CASE("bidirectional cnot realizes its basis identity exactly") {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Transcript t = cnot_to_coherent_bidirectional(basis4(a * 2 + b));
      CHECK(t.final_fidelity >= 1.0 - 1e-12);
      const PureState& s = *t.final_state;
      // |a>|b> -> |a>_a |b>_b with b landing at Alice and a landing at Bob
      long long hot = index_of(s, {{"a", a}, {"b", b}, {"e1", b}, {"e2", a}});
      check_definite(s, hot, 1e-12);
    }
  }
}

TEST_CASE("bidirectional cnot ledger and coherence") {
  Transcript t0 = cnot_to_coherent_bidirectional(basis4(0));
  CHECK(t0.consumed == parse_resources("1 cnot + 1 ebit"));
  CHECK(t0.produced == parse_resources("1 cobit-> + 1 cobit<-"));
  CHECK(t0.catalysts.empty());

  std::mt19937_64 rng = substream(23, "bidir");
  Transcript t = cnot_to_coherent_bidirectional(haar_vector(4, rng));
  CHECK(t.final_fidelity >= 1.0 - 1e-10);
}

TEST_CASE("distributed cnot flips the target and leaves two bell pairs") {
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      Transcript t = coherent_distributed_cnot(basis4(x * 2 + y));
      CHECK(t.final_fidelity >= 1.0 - 1e-10);
      const PureState& s = *t.final_state;
      // data is |x>|y^x>, and the two fresh pairs each carry one ebit
      SchmidtData cut = schmidt(s, {Party::A});
      CHECK(cut.entropy_bits == doctest::Approx(2.0).epsilon(1e-9));
      DensityMatrix data = partial_trace_labels(s, {"x", "y"});
      Mat expected = Mat::Zero(4, 4);
      int out = x * 2 + (y ^ x);
      expected(out, out) = 1.0;
      CHECK((data.matrix() - expected).norm() < 1e-9);
    }
  }
  Transcript t = coherent_distributed_cnot(basis4(2));
  CHECK(t.consumed == parse_resources("1 cobit-> + 1 cobit<-"));
  CHECK(t.produced == parse_resources("1 cnot + 1 ebit"));
  CHECK(t.catalysts == parse_resources("1 ebit"));
}

TEST_CASE("distributed cnot acts as a cnot on entangled inputs") {
  // (|00> + |10>)/sqrt2 -> (|00> + |11>)/sqrt2 on the data registers
  Vec in = Vec::Zero(4);
  in(0) = 1.0 / std::sqrt(2.0);
  in(2) = 1.0 / std::sqrt(2.0);
  Transcript t = coherent_distributed_cnot(in);
  CHECK(t.final_fidelity >= 1.0 - 1e-10);
  DensityMatrix data = partial_trace_labels(*t.final_state, {"x", "y"});
  Mat expected = Mat::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(0, 3) = 0.5;
  expected(3, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK((data.matrix() - expected).norm() < 1e-9);
}

TEST_CASE("cobit to cbit hands the sender copy to the environment") {
  std::mt19937_64 rng = substream(24, "cbit");
  Vec msg = haar_vector(2, rng);
  Transcript t = cobit_to_cbit(msg);
  CHECK(t.final_fidelity >= 1.0 - 1e-10);
  CHECK(t.consumed == parse_resources("1 cobit->"));
  CHECK(t.produced == parse_resources("1 cbit->"));
  const PureState& s = *t.final_state;
  CHECK(s.layout().at(s.layout().position("m")).party == Party::E);
  CHECK(s.layout().at(s.layout().position("m_cp")).party == Party::B);
}

TEST_CASE("cobit fed with plus yields one ebit") {
  Transcript t = cobit_to_ebit();
  CHECK(t.final_fidelity >= 1.0 - 1e-10);
  CHECK(t.consumed == parse_resources("1 cobit->"));
  CHECK(t.produced == parse_resources("1 ebit"));
  CHECK(schmidt(*t.final_state, {Party::A}).entropy_bits ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("concentration oracle values at p = 0.7, four copies") {
  Vec pair = Vec::Zero(4);
  pair(0) = std::sqrt(0.7);
  pair(3) = std::sqrt(0.3);
  const double expected_prob[5] = {0.2401, 0.4116, 0.2646, 0.0756, 0.0081};
  std::mt19937_64 rng = substream(31, "concentrate-oracle");
  for (int run = 0; run < 40; ++run) {
    ConcentrationResult r = entanglement_concentrate(pair, 4, rng);
    REQUIRE(r.weight >= 0);
    REQUIRE(r.weight <= 4);
    CHECK(r.probability == doctest::Approx(expected_prob[r.weight]).epsilon(1e-12));
    double rank = 1.0;
    for (int i = 0; i < r.weight; ++i) rank = rank * (4 - i) / (i + 1);
    CHECK(r.entropy_bits == doctest::Approx(std::log2(rank)).epsilon(1e-9));
    CHECK(r.transcript.final_fidelity >= 1.0 - 1e-10);
    // per-shot yields are irrational, so the ledger never claims exact counts
    CHECK(r.transcript.consumed.empty());
    CHECK(r.transcript.produced.empty());
  }
}

TEST_CASE("concentration weight statistics follow the binomial law") {
  Vec pair = Vec::Zero(4);
  pair(0) = 1.0 / std::sqrt(2.0);
  pair(3) = 1.0 / std::sqrt(2.0);
  std::mt19937_64 rng = substream(32, "concentrate-stats");
  const int shots = 2000;
  int histogram[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < shots; ++i) histogram[entanglement_concentrate(pair, 4, rng).weight]++;
  const double expect[5] = {0.0625, 0.25, 0.375, 0.25, 0.0625};
  for (int w = 0; w <= 4; ++w) {
    double sigma = std::sqrt(expect[w] * (1.0 - expect[w]) * shots);
    CHECK(std::abs(histogram[w] - expect[w] * shots) < 4.0 * sigma);
  }
}

TEST_CASE("concentration works on unequal schmidt bases too") {
  // a state whose schmidt vectors are not computational: rotate |00>+|11>
  std::mt19937_64 rng = substream(33, "concentrate-rotated");
  Mat u = haar_unitary(2, rng);
  Mat v = haar_unitary(2, rng);
  Vec pair = Vec::Zero(4);
  pair(0) = std::sqrt(0.7);
  pair(3) = std::sqrt(0.3);
  Mat uv = Mat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) uv(i * 2 + k, j * 2 + l) = u(i, j) * v(k, l);
  Vec rotated = uv * pair;
  ConcentrationResult r = entanglement_concentrate(rotated, 3, rng);
  CHECK(r.transcript.final_fidelity >= 1.0 - 1e-9);
  CHECK(r.probability > 0.0);
}

TEST_CASE("concentration validates its arguments and degrades gracefully") {
  std::mt19937_64 rng = substream(34, "concentrate-bad");
  Vec pair = Vec::Zero(4);
  pair(0) = pair(3) = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(entanglement_concentrate(pair, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_concentrate(pair, 11, rng), std::invalid_argument);

  // a product input has nothing to concentrate: weight 0 with certainty
  Vec product = Vec::Zero(4);
  product(0) = 1.0;
  ConcentrationResult r = entanglement_concentrate(product, 4, rng);
  CHECK(r.weight == 0);
  CHECK(r.probability == doctest::Approx(1.0));
  CHECK(r.entropy_bits == doctest::Approx(0.0));
}

TEST_CASE("coherent classical coding leaves bob a copy of the message") {
  // two orthogonal codewords spanning a qubit
  Vec c0(2), c1(2);
  c0 << 1.0, 0.0;
  c1 << 0.0, 1.0;
  Vec msg(2);
  msg << std::sqrt(0.2), std::sqrt(0.8);
  Transcript t = coherent_classical_coding({c0, c1}, msg);
  CHECK(t.final_fidelity >= 1.0 - 1e-9);
  CHECK(t.consumed == parse_resources("1 qubit->"));
  CHECK(t.produced == parse_resources("1 cobit->"));
}

TEST_CASE("coherent classical coding with four codewords in dimension four") {
  std::vector<Vec> codewords;
  for (int i = 0; i < 4; ++i) {
    Vec c = Vec::Zero(4);
    c(i) = 1.0;
    codewords.push_back(c);
  }
  std::mt19937_64 rng = substream(35, "coding4");
  Vec msg = haar_vector(4, rng);
  Transcript t = coherent_classical_coding(codewords, msg);
  CHECK(t.final_fidelity >= 1.0 - 1e-9);
  CHECK(t.consumed == parse_resources("2 qubit->"));
  CHECK(t.produced == parse_resources("2 cobit->"));
}

TEST_CASE("coherent classical coding declines exact accounting off powers of two") {
  std::vector<Vec> codewords;
  for (int i = 0; i < 3; ++i) {
    Vec c = Vec::Zero(3);
    c(i) = 1.0;
    codewords.push_back(c);
  }
  Vec msg = Vec::Zero(3);
  msg(1) = 1.0;
  Transcript t = coherent_classical_coding(codewords, msg);
  CHECK(t.final_fidelity >= 1.0 - 1e-9);
  CHECK(t.consumed.empty());
  CHECK(t.produced.empty());
  CHECK(t.status != "ok");  // the status carries the non-dyadic note
}

TEST_CASE("gentle measurement disturbance stays under the bound") {
  RegisterLayout l({{"q", Party::A, 2}});
  Vec v(2);
  v << std::sqrt(0.99), std::sqrt(0.01);
  PureState psi(l, v);
  Mat a0(2, 2), a1(2, 2);
  a0 << 1.0, 0.0, 0.0, 0.9;
  a1 << 0.0, 0.0, 0.0, 0.1;
  Povm povm({{"pass", a0}, {"rest", a1}});
  GentleMeasurementReport rep = gentle_measurement_check(psi, povm, {"q"}, 0);
  CHECK(rep.probability == doctest::Approx(0.99 + 0.01 * 0.9).epsilon(1e-12));
  CHECK(rep.bound == doctest::Approx(2.0 * std::sqrt(1.0 - rep.probability)).epsilon(1e-12));
  CHECK(rep.disturbance >= 0.0);
  CHECK(rep.disturbance <= rep.bound);
}

TEST_CASE("gentle measurement bound holds for random states and povms") {
  std::mt19937_64 rng = substream(36, "gentle-random");
  RegisterLayout l({{"q", Party::A, 2}});
  for (int trial = 0; trial < 50; ++trial) {
    Vec v = haar_vector(2, rng);
    PureState psi(l, v);
    // a povm whose first element nearly contains the state
    Mat a0 = 0.98 * (v * v.adjoint()) + 0.01 * Mat::Identity(2, 2);
    Mat a1 = Mat::Identity(2, 2) - a0;
    Povm povm({{"pass", a0}, {"rest", a1}});
    GentleMeasurementReport rep = gentle_measurement_check(psi, povm, {"q"}, 0);
    CHECK(rep.probability > 0.9);
    CHECK(rep.disturbance <= rep.bound + 1e-12);
  }
}
