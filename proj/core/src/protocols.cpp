#include "cobit/protocols/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "cobit/gates.hpp"

namespace cobit::protocols {

namespace {

namespace cal = cobit::calculus;

Vec checked_vec(const Vec& v, long long dim, const char* what) {
  if (v.size() != dim)
    throw std::invalid_argument(std::string(what) + " must have dimension " +
                                std::to_string(dim));
  double n2 = v.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + " is not normalized");
  return v / std::sqrt(n2);
}

// Validates a caller-supplied shared pair (two qubits, Alice then Bob, Bell
// state) and rebinds it to the labels the protocol uses internally.
PureState canonical_shared(const PureState& shared, const std::string& label_a,
                           const std::string& label_b) {
  const RegisterLayout& l = shared.layout();
  if (l.size() != 2 || l.at(0).dim != 2 || l.at(1).dim != 2 || l.at(0).party != Party::A ||
      l.at(1).party != Party::B)
    throw std::invalid_argument("shared entanglement must be two qubits held by Alice then Bob");
  Vec ideal(4);
  double r = 1.0 / std::sqrt(2.0);
  ideal << r, 0, 0, r;
  cplx ov = ideal.dot(shared.amplitudes());
  if (std::norm(ov) < 1.0 - 1e-10)
    throw std::invalid_argument("shared state is not a Bell pair");
  return PureState(RegisterLayout({{label_a, Party::A, 2}, {label_b, Party::B, 2}}),
                   shared.amplitudes());
}

long long binomial(int n, int k) {
  long long out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

// Unitary sending `v` (a unit vector) to |0> with phase exactly +1.
Mat unprepare_unitary(const Vec& v) {
  long long d = v.size();
  Mat seed = Mat::Identity(d, d);
  seed.col(0) = v;
  Eigen::HouseholderQR<Mat> qr(seed);
  Mat q = qr.householderQ();
  cplx phase = q.col(0).dot(v);  // Eigen dot conjugates the first argument
  phase /= std::abs(phase);
  q.col(0) *= phase;
  return q.adjoint();
}

}  // namespace

PureState coherent_copy(const PureState& psi, const std::string& label,
                        const std::string& copy_label, Party receiver) {
  // The copy map |i> -> |i>|i> is an isometry by construction, so it is
  // scattered directly instead of going through the dense-matrix path (whose
  // orthonormality check is quartic in the subsystem dimension).
  const RegisterLayout& layout = psi.layout();
  int pos = layout.position(label);
  long long d = layout.at(pos).dim;
  long long stride = layout.stride(pos);
  std::vector<Subsystem> subs = layout.subsystems();
  subs.push_back({copy_label, receiver, static_cast<int>(d)});
  Vec out = Vec::Zero(psi.dim() * d);
  for (long long idx = 0; idx < psi.dim(); ++idx)
    out(idx * d + (idx / stride) % d) = psi.amplitudes()(idx);
  return PureState(RegisterLayout(std::move(subs)), std::move(out));
}

Transcript cobit_to_cbit(const Vec& message) {
  Transcript t;
  t.protocol = "cobit-to-cbit";
  Vec msg = checked_vec(message, 2, "message");
  PureState s(RegisterLayout({{"m", Party::A, 2}}), msg);
  t.note("prepare the message on Alice's register m", "prepare", {"m"});

  s = coherent_copy(s, "m", "m_cp", Party::B);
  t.consumed.add(cal::cobit_fwd(), 1);
  t.note("copy m to Bob through one coherent classical channel", "coherent-copy",
         {"m", "m_cp"});

  s = relabel_party(s, "m", Party::E);
  t.note("Alice's retained copy escapes to the environment", "discard-to-environment", {"m"});
  t.produced.add(cal::cbit_fwd(), 1);

  Vec target = Vec::Zero(4);
  target(0) = msg(0);
  target(3) = msg(1);
  PureState ideal(s.layout(), target);
  t.final_fidelity = fidelity(s, ideal);
  t.target_description = "message basis copied to Bob with an environment record";
  t.final_state = std::move(s);
  return t;
}

Transcript cobit_to_ebit() {
  Transcript t;
  t.protocol = "cobit-to-ebit";
  Vec plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  PureState s(RegisterLayout({{"m", Party::A, 2}}), plus);
  t.note("prepare |+> on Alice's register m", "prepare", {"m"});

  s = coherent_copy(s, "m", "m_cp", Party::B);
  t.consumed.add(cal::cobit_fwd(), 1);
  t.note("copy m to Bob through one coherent classical channel", "coherent-copy",
         {"m", "m_cp"});
  t.produced.add(cal::ebit(), 1);

  PureState ideal = make_bell(2, "m", "m_cp");
  t.final_fidelity = fidelity(s, ideal);
  t.target_description = "shared Bell pair (m, m_cp)";
  t.final_state = std::move(s);
  return t;
}

namespace {

Transcript run_superdense(const Vec& message, PureState shared) {
  Transcript t;
  t.protocol = "coherent-superdense-coding";
  Vec msg = checked_vec(message, 4, "message");
  PureState s = tensor(
      PureState(RegisterLayout({{"m1", Party::A, 2}, {"m2", Party::A, 2}}), msg),
      std::move(shared));
  t.note("message qubits (m1, m2) alongside the shared Bell pair (e1, e2)", "prepare",
         {"m1", "m2", "e1", "e2"});
  t.consumed.add(cal::ebit(), 1);

  s = apply(s, gates::cnot(), {"m2", "e1"});
  t.note("Alice applies CNOT from m2 onto her Bell half", "local-unitary", {"m2", "e1"});
  s = apply(s, gates::cz(), {"m1", "e1"});
  t.note("Alice applies CZ from m1 onto her Bell half", "local-unitary", {"m1", "e1"});

  s = relabel_party(s, "e1", Party::B);
  t.consumed.add(cal::qubit_fwd(), 1);
  t.note("Alice sends her Bell half to Bob through the qubit channel", "send-qubit", {"e1"});

  s = apply(s, gates::cnot(), {"e1", "e2"});
  t.note("Bob applies CNOT across his two qubits", "local-unitary", {"e1", "e2"});
  s = apply(s, gates::hadamard(), {"e1"});
  t.note("Bob applies a Hadamard to the received qubit", "local-unitary", {"e1"});
  t.produced.add(cal::cobit_fwd(), 2);

  // Ideal outcome: both message qubits coherently copied to Bob, so e1 holds
  // m1's basis value and e2 holds m2's.
  Vec target = Vec::Zero(16);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      target(((x1 * 2 + x2) * 2 + x1) * 2 + x2) = msg(x1 * 2 + x2);
  PureState ideal(s.layout(), target);
  t.final_fidelity = fidelity(s, ideal);
  t.target_description = "both message qubits coherently copied to Bob";
  t.final_state = std::move(s);
  return t;
}

}  // namespace

Transcript coherent_superdense_coding(const Vec& message) {
  return run_superdense(message, make_bell(2, "e1", "e2"));
}

Transcript coherent_superdense_coding(const Vec& message, const PureState& shared) {
  return run_superdense(message, canonical_shared(shared, "e1", "e2"));
}

namespace {

Transcript run_teleport(const Vec& psi, PureState shared, CobitProvider provider) {
  Transcript t;
  t.protocol = provider == CobitProvider::Ideal ? "coherent-teleportation"
                                                : "coherent-teleportation-via-sdc";
  Vec in = checked_vec(psi, 2, "input state");
  PureState s = tensor(PureState(RegisterLayout({{"s", Party::A, 2}}), in), std::move(shared));
  t.note("input qubit s alongside the catalyst Bell pair (e1, e2)", "prepare",
         {"s", "e1", "e2"});
  t.catalysts.add(cal::ebit(), 1);
  t.note("borrow one Bell pair (e1, e2) as catalyst", "borrow", {"e1", "e2"});

  s = apply(s, gates::cnot(), {"s", "e1"});
  t.note("Alice applies CNOT from s onto her Bell half", "local-unitary", {"s", "e1"});
  s = apply(s, gates::hadamard(), {"s"});
  t.note("Alice applies a Hadamard to s", "local-unitary", {"s"});

  std::string bob_z;  // Bob's coherent copy of s's basis value (Z correction control)
  std::string bob_x;  // Bob's coherent copy of e1's basis value (X correction control)
  if (provider == CobitProvider::Ideal) {
    s = coherent_copy(s, "s", "s_cp", Party::B);
    t.consumed.add(cal::cobit_fwd(), 1);
    t.note("copy s to Bob through one coherent classical channel", "coherent-copy",
           {"s", "s_cp"});
    s = coherent_copy(s, "e1", "e1_cp", Party::B);
    t.consumed.add(cal::cobit_fwd(), 1);
    t.note("copy e1 to Bob through one coherent classical channel", "coherent-copy",
           {"e1", "e1_cp"});
    bob_z = "s_cp";
    bob_x = "e1_cp";
  } else {
    // Realize the two coherent channel uses by superdense coding on the
    // two-qubit register (s, e1) with a fresh Bell pair (f1, f2).
    s = tensor(std::move(s), make_bell(2, "f1", "f2"));
    t.consumed.add(cal::ebit(), 1);
    t.note("consume a fresh Bell pair (f1, f2) for superdense coding", "prepare",
           {"f1", "f2"});
    s = apply(s, gates::cnot(), {"e1", "f1"});
    t.note("Alice applies CNOT from e1 onto f1", "local-unitary", {"e1", "f1"});
    s = apply(s, gates::cz(), {"s", "f1"});
    t.note("Alice applies CZ from s onto f1", "local-unitary", {"s", "f1"});
    s = relabel_party(s, "f1", Party::B);
    t.consumed.add(cal::qubit_fwd(), 1);
    t.note("Alice sends f1 to Bob through the qubit channel", "send-qubit", {"f1"});
    s = apply(s, gates::cnot(), {"f1", "f2"});
    t.note("Bob applies CNOT across f1 and f2", "local-unitary", {"f1", "f2"});
    s = apply(s, gates::hadamard(), {"f1"});
    t.note("Bob applies a Hadamard to f1", "local-unitary", {"f1"});
    bob_z = "f1";
    bob_x = "f2";
  }

  s = apply(s, gates::cnot(), {bob_x, "e2"});
  t.note("Bob applies the X correction controlled on his copy of e1", "local-unitary",
         {bob_x, "e2"});
  s = apply(s, gates::cz(), {bob_z, "e2"});
  t.note("Bob applies the Z correction controlled on his copy of s", "local-unitary",
         {bob_z, "e2"});

  t.produced.add(cal::qubit_fwd(), 1);
  t.produced.add(cal::ebit(), 1);
  t.note("return one Bell pair repaying the catalyst; the other is fresh output",
         "return", {"e1", bob_x});

  // Ideal outcome: psi delivered to Bob's e2; (s, bob_z) and (e1, bob_x) are
  // Bell pairs. Layout order is (s, e1, e2, bob_z, bob_x).
  Vec target = Vec::Zero(32);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
      for (int n = 0; n < 2; ++n)
        target((((j * 2 + i) * 2 + n) * 2 + j) * 2 + i) = 0.5 * in(n);
  PureState ideal(s.layout(), target);
  t.final_fidelity = fidelity(s, ideal);
  t.target_description = "input state delivered to Bob plus two shared Bell pairs";
  t.final_state = std::move(s);
  return t;
}

}  // namespace

Transcript coherent_teleportation(const Vec& psi, CobitProvider provider) {
  return run_teleport(psi, make_bell(2, "e1", "e2"), provider);
}

Transcript coherent_teleportation(const Vec& psi, const PureState& shared,
                                  CobitProvider provider) {
  return run_teleport(psi, canonical_shared(shared, "e1", "e2"), provider);
}

Transcript cnot_to_coherent_bidirectional(const Vec& joint) {
  Transcript t;
  t.protocol = "cnot-to-coherent-bidirectional";
  Vec in = checked_vec(joint, 4, "joint input");
  PureState s = tensor(
      PureState(RegisterLayout({{"a", Party::A, 2}, {"b", Party::B, 2}}), in),
      make_bell(2, "e1", "e2"));
  t.note("inputs a (Alice) and b (Bob) alongside the shared Bell pair (e1, e2)", "prepare",
         {"a", "b", "e1", "e2"});
  t.consumed.add(cal::ebit(), 1);

  s = apply_controlled(s, "a", {gates::identity(2), gates::pauli_y()}, "e1");
  t.note("Alice applies Y onto e1 controlled on a", "controlled-unitary", {"a", "e1"});
  s = apply_controlled(s, "b", {gates::identity(2), gates::pauli_z()}, "e2");
  t.note("Bob applies Z onto e2 controlled on b", "controlled-unitary", {"b", "e2"});

  s = apply(s, gates::cnot(), {"e1", "e2"});
  t.consumed.add(cal::gate_cnot(), 1);
  t.note("one use of the nonlocal CNOT from e1 to e2", "nonlocal-gate", {"e1", "e2"});

  s = apply(s, gates::hadamard(), {"e1"});
  t.note("Alice applies a Hadamard to e1", "local-unitary", {"e1"});

  // Local completion on Alice's side: fold her input back into e1 and cancel
  // the residual phases so the two coherent channels come out exact.
  s = apply(s, gates::cnot(), {"a", "e1"});
  t.note("Alice applies CNOT from a onto e1", "local-unitary", {"a", "e1"});
  s = apply(s, gates::phase_s(), {"a"});
  t.note("Alice applies the phase gate S to a", "local-unitary", {"a"});
  s = apply(s, gates::cz(), {"a", "e1"});
  t.note("Alice applies CZ between a and e1", "local-unitary", {"a", "e1"});

  t.produced.add(cal::cobit_fwd(), 1);
  t.produced.add(cal::cobit_bwd(), 1);

  // Ideal outcome: e2 holds a's basis value at Bob, e1 holds b's at Alice.
  Vec target = Vec::Zero(16);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      target(((a * 2 + b) * 2 + b) * 2 + a) = in(a * 2 + b);
  PureState ideal(s.layout(), target);
  t.final_fidelity = fidelity(s, ideal);
  t.target_description = "coherent classical channels a->Bob and b->Alice";
  t.final_state = std::move(s);
  return t;
}

Transcript coherent_distributed_cnot(const Vec& joint) {
  Transcript t;
  t.protocol = "coherent-distributed-cnot";
  Vec in = checked_vec(joint, 4, "joint input");
  PureState s = tensor(
      PureState(RegisterLayout({{"x", Party::A, 2}, {"y", Party::B, 2}}), in),
      make_bell(2, "e1", "e2"));
  t.note("control x (Alice) and target y (Bob) alongside the Bell pair (e1, e2)", "prepare",
         {"x", "y", "e1", "e2"});
  t.catalysts.add(cal::ebit(), 1);
  t.note("borrow one Bell pair (e1, e2) as catalyst", "borrow", {"e1", "e2"});

  s = apply(s, gates::cnot(), {"x", "e1"});
  t.note("Alice applies CNOT from x onto e1", "local-unitary", {"x", "e1"});

  s = coherent_copy(s, "e1", "e1_cp", Party::B);
  t.consumed.add(cal::cobit_fwd(), 1);
  t.note("copy e1 to Bob through one coherent classical channel", "coherent-copy",
         {"e1", "e1_cp"});

  s = apply(s, gates::cnot(), {"e1_cp", "e2"});
  t.note("Bob applies CNOT from e1_cp onto e2", "local-unitary", {"e1_cp", "e2"});
  s = apply(s, gates::cnot(), {"e2", "y"});
  t.note("Bob applies CNOT from e2 onto y", "local-unitary", {"e2", "y"});
  s = apply(s, gates::hadamard(), {"e2"});
  t.note("Bob applies a Hadamard to e2", "local-unitary", {"e2"});

  s = coherent_copy(s, "e2", "e2_cp", Party::A);
  t.consumed.add(cal::cobit_bwd(), 1);
  t.note("copy e2 to Alice through one coherent classical channel", "coherent-copy",
         {"e2", "e2_cp"});

  s = apply(s, gates::cz(), {"e2_cp", "x"});
  t.note("Alice applies CZ between e2_cp and x", "local-unitary", {"e2_cp", "x"});

  t.produced.add(cal::gate_cnot(), 1);
  t.produced.add(cal::ebit(), 1);
  t.note("return the Bell pair (e1, e1_cp) repaying the catalyst; (e2, e2_cp) is fresh",
         "return", {"e1", "e1_cp"});

  // Ideal outcome: CNOT applied to (x, y) plus Bell pairs (e1, e1_cp) and
  // (e2, e2_cp). Layout order is (x, y, e1, e2, e1_cp, e2_cp).
  Vec target = Vec::Zero(64);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
          target(((((x * 2 + (y ^ x)) * 2 + u) * 2 + v) * 2 + u) * 2 + v) =
              0.5 * in(x * 2 + y);
  PureState ideal(s.layout(), target);
  t.final_fidelity = fidelity(s, ideal);
  t.target_description = "CNOT applied across parties plus one fresh Bell pair";
  t.final_state = std::move(s);
  return t;
}

ConcentrationResult entanglement_concentrate(const Vec& pair, int copies, std::mt19937_64& rng) {
  if (copies < 2 || copies > 10)
    throw std::invalid_argument("entanglement concentration supports 2..10 copies");
  Vec in = checked_vec(pair, 4, "pair");

  Transcript t;
  t.protocol = "entanglement-concentration";

  // Schmidt decomposition of the single copy.
  Mat m(2, 2);
  m << in(0), in(1), in(2), in(3);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat rot_a = svd.matrixU().adjoint();
  Mat rot_b = svd.matrixV().transpose();

  // n IID copies laid out as (a1, b1, a2, b2, ...).
  std::vector<Subsystem> subs;
  std::vector<std::string> alice_labels;
  PureState s;
  for (int i = 1; i <= copies; ++i) {
    std::string la = "a" + std::to_string(i);
    std::string lb = "b" + std::to_string(i);
    alice_labels.push_back(la);
    PureState copy(RegisterLayout({{la, Party::A, 2}, {lb, Party::B, 2}}), in);
    s = (i == 1) ? std::move(copy) : tensor(std::move(s), copy);
  }
  t.note("prepare " + std::to_string(copies) + " IID copies of the input pair", "prepare",
         alice_labels);

  for (int i = 1; i <= copies; ++i) {
    s = apply(s, rot_a, {"a" + std::to_string(i)});
    s = apply(s, rot_b, {"b" + std::to_string(i)});
  }
  t.note("rotate every copy into its Schmidt basis with local unitaries", "local-unitary",
         {});

  // Probability of each total Hamming weight of Alice's qubits. In the
  // Schmidt basis the state is supported on paired strings, so the weight of
  // Alice's half determines the weight of Bob's.
  std::vector<int> alice_pos = s.layout().positions(alice_labels);
  std::vector<long long> alice_strides;
  alice_strides.reserve(alice_pos.size());
  for (int p : alice_pos) alice_strides.push_back(s.layout().stride(p));

  auto weight_of = [&](long long flat) {
    int w = 0;
    for (long long st : alice_strides) w += static_cast<int>((flat / st) % 2);
    return w;
  };

  std::vector<double> weight_prob(copies + 1, 0.0);
  for (long long f = 0; f < s.dim(); ++f) {
    double p2 = std::norm(s.amplitudes()(f));
    if (p2 > 0.0) weight_prob[weight_of(f)] += p2;
  }

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double total = 0.0;
  for (int k = 0; k <= copies; ++k)
    if (weight_prob[k] >= 1e-14) total += weight_prob[k];
  double u = unif(rng) * total;
  int weight = -1;
  double acc = 0.0;
  for (int k = 0; k <= copies; ++k) {
    if (weight_prob[k] < 1e-14) continue;
    acc += weight_prob[k];
    weight = k;
    if (u <= acc) break;
  }

  Vec post = s.amplitudes();
  for (long long f = 0; f < post.size(); ++f)
    if (weight_of(f) != weight) post(f) = 0.0;
  post /= std::sqrt(weight_prob[weight]);
  s = PureState(s.layout(), std::move(post));
  t.note("measure the total Hamming weight of Alice's qubits (outcome " +
             std::to_string(weight) + ")",
         "measure", alice_labels);

  double entropy = schmidt(s, {Party::A}).entropy_bits;
  long long rank = binomial(copies, weight);
  t.target_description =
      "maximally entangled state of Schmidt rank " + std::to_string(rank);

  // Ideal outcome: uniform superposition over the weight-k paired strings.
  Vec ideal_amps = Vec::Zero(s.dim());
  double c = 1.0 / std::sqrt(static_cast<double>(rank));
  for (long long sbits = 0; sbits < (1LL << copies); ++sbits) {
    if (std::popcount(static_cast<std::uint64_t>(sbits)) != weight) continue;
    long long f = 0;
    for (int i = 0; i < copies; ++i) {
      long long bit = (sbits >> (copies - 1 - i)) & 1;
      // Subsystems alternate (a_i, b_i) in layout order.
      f += bit * s.layout().stride(2 * i);
      f += bit * s.layout().stride(2 * i + 1);
    }
    ideal_amps(f) = c;
  }
  PureState ideal(s.layout(), std::move(ideal_amps));
  t.final_fidelity = fidelity(s, ideal);
  t.final_state = s;

  ConcentrationResult out;
  out.weight = weight;
  out.probability = weight_prob[weight];
  out.entropy_bits = entropy;
  out.transcript = std::move(t);
  return out;
}

Transcript coherent_classical_coding(const std::vector<Vec>& codewords, const Vec& message) {
  if (codewords.empty()) throw std::invalid_argument("need at least one codeword");
  int l = static_cast<int>(codewords.size());
  long long d = codewords[0].size();
  if (d < 2) throw std::invalid_argument("codewords must have dimension >= 2");
  for (int x = 0; x < l; ++x) {
    if (codewords[x].size() != d)
      throw std::invalid_argument("codewords must share one dimension");
    if (std::abs(codewords[x].squaredNorm() - 1.0) > 1e-9)
      throw std::invalid_argument("codewords must be unit vectors");
    for (int y = x + 1; y < l; ++y)
      if (std::abs(codewords[x].dot(codewords[y])) > 1e-10)
        throw std::invalid_argument("codewords must be pairwise orthogonal");
  }
  int msg_dim = std::max(l, 2);
  Vec in = checked_vec(message, msg_dim, "message");

  Transcript t;
  t.protocol = "coherent-classical-coding";
  PureState s(RegisterLayout({{"msg", Party::A, msg_dim}}), in);
  t.note("prepare the message register", "prepare", {"msg"});

  // Encoder: |x> -> |x> (x) |codeword_x>; with a single codeword both basis
  // messages map to it and the channel carries nothing.
  Mat enc = Mat::Zero(msg_dim * d, msg_dim);
  for (int x = 0; x < msg_dim; ++x)
    enc.block(x * d, x, d, 1) = codewords[std::min(x, l - 1)];
  s = apply(s, Isometry(std::move(enc)), {"msg"}, Subsystem{"c", Party::A, static_cast<int>(d)});
  t.note("encode the message into its codeword", "isometry", {"msg", "c"});

  s = relabel_party(s, "c", Party::B);
  bool dyadic_d = (d & (d - 1)) == 0;
  if (dyadic_d) {
    int bits = 0;
    for (long long v = d; v > 1; v >>= 1) ++bits;
    t.consumed.add(cal::qubit_fwd(), bits);
  } else {
    t.status = "non-dyadic dimensions; channel uses not representable as exact qubit counts";
  }
  t.note("send the codeword register to Bob", "send-qubit", {"c"});

  // Decoder: support projectors of the codewords, completed to a POVM and
  // lifted to an isometry with a coherent outcome register.
  std::vector<PovmElement> elems;
  Mat rest = Mat::Identity(d, d);
  for (int x = 0; x < l; ++x) {
    Mat p = codewords[x] * codewords[x].adjoint();
    rest -= p;
    elems.push_back({"codeword-" + std::to_string(x), std::move(p)});
  }
  bool has_rest = rest.cwiseAbs().maxCoeff() > 1e-9;
  if (has_rest) elems.push_back({"off-support", std::move(rest)});
  Povm povm(std::move(elems));
  int o_dim = povm.size() == 1 ? 2 : povm.size();
  Isometry dec = neumark_dilate(povm);
  if (povm.size() == 1) {
    // A single-element POVM dilates to a trivial outcome register; widen it
    // to the minimum register size with an unused level.
    Mat v = Mat::Zero(2 * d, d);
    for (long long r = 0; r < d; ++r) v(2 * r, r) = dec.matrix()(r, r);
    dec = Isometry(std::move(v));
  }
  s = apply(s, dec, {"c"}, Subsystem{"o", Party::B, o_dim});
  t.note("Bob decodes coherently with the support projectors", "coherent-measure",
         {"c", "o"});

  std::vector<Mat> blocks;
  for (int x = 0; x < o_dim; ++x)
    blocks.push_back(x < l ? unprepare_unitary(codewords[x]) : gates::identity(static_cast<int>(d)));
  s = apply_controlled(s, "o", blocks, "c");
  t.note("Bob uncomputes the codeword controlled on the outcome", "controlled-unitary",
         {"o", "c"});

  Vec ground = Vec::Zero(d);
  ground(0) = 1.0;
  s = drop_subsystem(s, "c", ground);
  t.note("discard the reset codeword register", "discard", {"c"});

  if (o_dim > msg_dim) {
    s = truncate_subsystem(s, "o", msg_dim);
    t.note("trim the unused decoder outcome", "truncate", {"o"});
  }
  bool dyadic_l = l >= 2 && (l & (l - 1)) == 0;
  if (dyadic_l) {
    int bits = 0;
    for (int v = l; v > 1; v >>= 1) ++bits;
    t.produced.add(cal::cobit_fwd(), bits);
  }

  // Ideal outcome: Bob holds a coherent copy of the message; with a single
  // codeword his register stays at |0> and no information flows.
  long long o_final = s.layout().at(s.layout().position("o")).dim;
  Vec target = Vec::Zero(msg_dim * o_final);
  for (int x = 0; x < msg_dim; ++x) target(x * o_final + std::min<long long>(x, l - 1)) = in(x);
  PureState ideal(s.layout(), target);
  t.final_fidelity = fidelity(s, ideal);
  t.target_description = "coherent copy of the message delivered to Bob";
  t.final_state = std::move(s);
  return t;
}

GentleMeasurementReport gentle_measurement_check(const PureState& psi, const Povm& povm,
                                                 const std::vector<std::string>& targets,
                                                 int outcome) {
  if (outcome < 0 || outcome >= povm.size())
    throw std::invalid_argument("POVM outcome index out of range");
  std::vector<double> probs = born_probabilities(psi, povm, targets);
  double p = probs[static_cast<std::size_t>(outcome)];
  if (p < 1e-14) throw std::invalid_argument("outcome has (near) zero probability");
  Mat root = matrix_sqrt_psd(povm.at(outcome).op);
  UnnormalizedState un = apply_operator(psi, root, targets);
  PureState post(un.layout, un.amplitudes / std::sqrt(un.squared_norm()));
  GentleMeasurementReport rep;
  rep.probability = p;
  rep.disturbance = 1.0 - fidelity(psi, post);
  rep.bound = 2.0 * std::sqrt(std::max(0.0, 1.0 - p));
  return rep;
}

}  // namespace cobit::protocols
