#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cobit/calculus/prove.hpp"
#include "cobit/calculus/resource.hpp"
#include "cobit/capacity/capacity.hpp"
#include "cobit/ops.hpp"
#include "cobit/protocols/protocols.hpp"
#include "cobit/random.hpp"
#include "cobit/rsp.hpp"
#include "cobit/types.hpp"

namespace {

using cobit::Party;
using cobit::PureState;
using cobit::Vec;

PureState random_register(int qubits, std::mt19937_64& rng) {
  std::vector<cobit::Subsystem> subs;
  for (int q = 0; q < qubits; ++q)
    subs.push_back({"q" + std::to_string(q), q < qubits / 2 ? Party::A : Party::B, 2});
  return PureState(cobit::RegisterLayout(std::move(subs)),
                   cobit::haar_vector(1LL << qubits, rng));
}

void BM_ApplyTwoQubitGate(benchmark::State& state) {
  int qubits = static_cast<int>(state.range(0));
  std::mt19937_64 rng = cobit::substream(1, "bench-apply");
  PureState psi = random_register(qubits, rng);
  cobit::Mat gate = cobit::haar_unitary(4, rng);
  for (auto _ : state) {
    PureState out = cobit::apply(psi, gate, {"q0", "q1"});
    benchmark::DoNotOptimize(out.amplitudes().data());
  }
  state.SetComplexityN(1LL << qubits);
}
BENCHMARK(BM_ApplyTwoQubitGate)->DenseRange(6, 14, 2)->Complexity(benchmark::oN);

void BM_SchmidtHalfCut(benchmark::State& state) {
  int qubits = static_cast<int>(state.range(0));
  std::mt19937_64 rng = cobit::substream(2, "bench-schmidt");
  PureState psi = random_register(qubits, rng);
  for (auto _ : state) {
    cobit::SchmidtData data = cobit::schmidt(psi, {Party::A});
    benchmark::DoNotOptimize(data.entropy_bits);
  }
}
BENCHMARK(BM_SchmidtHalfCut)->DenseRange(6, 12, 2);

void BM_CoherentTeleportation(benchmark::State& state) {
  std::mt19937_64 rng = cobit::substream(3, "bench-teleport");
  Vec psi = cobit::haar_vector(2, rng);
  for (auto _ : state) {
    cobit::protocols::Transcript t = cobit::protocols::coherent_teleportation(psi);
    benchmark::DoNotOptimize(t.final_fidelity);
  }
}
BENCHMARK(BM_CoherentTeleportation);

void BM_RemotePreparationRound(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::mt19937_64 cover_rng = cobit::substream(4, "bench-rsp-cover");
  cobit::rsp::CoveringSet cover =
      n == 4 ? cobit::rsp::pauli_cover() : cobit::rsp::sample_covering(2, n, cover_rng, 50);
  std::mt19937_64 rng = cobit::substream(4, "bench-rsp");
  Vec psi = cobit::haar_vector(2, rng);
  for (auto _ : state) {
    cobit::rsp::RspResult r = cobit::rsp::run_coherent_rsp(psi, cover, rng);
    benchmark::DoNotOptimize(r.fidelity);
  }
}
BENCHMARK(BM_RemotePreparationRound)->Arg(4)->Arg(16)->Arg(64);

void BM_ProverEquality(benchmark::State& state) {
  namespace cal = cobit::calculus;
  cal::ResourceVector lhs = cal::parse_resources("2 cobit->");
  cal::ResourceVector rhs = cal::parse_resources("1 qubit-> + 1 ebit");
  cal::ProveOptions opts;
  opts.catalyst_budget = cal::parse_resources("1 ebit");
  for (auto _ : state) {
    cal::EqualityResult r = cal::check_equality(lhs, rhs, opts);
    benchmark::DoNotOptimize(r.equal);
  }
}
BENCHMARK(BM_ProverEquality);

void BM_GainOfWitnessEnsemble(benchmark::State& state) {
  cobit::capacity::GateSpec gate = cobit::capacity::cnot_spec();
  cobit::capacity::Ensemble witness = cobit::capacity::witness_bell_basis();
  for (auto _ : state) {
    double gain = cobit::capacity::delta_chi_of(gate, witness);
    benchmark::DoNotOptimize(gain);
  }
}
BENCHMARK(BM_GainOfWitnessEnsemble);

void BM_EntanglementConcentration(benchmark::State& state) {
  std::mt19937_64 rng = cobit::substream(5, "bench-concentrate");
  Vec pair(4);
  pair << 0.8366600265340756, 0, 0, 0.5477225575051661;  // Schmidt weights 0.7 / 0.3
  for (auto _ : state) {
    cobit::protocols::ConcentrationResult r =
        cobit::protocols::entanglement_concentrate(pair, 6, rng);
    benchmark::DoNotOptimize(r.entropy_bits);
  }
}
BENCHMARK(BM_EntanglementConcentration);

}  // namespace

BENCHMARK_MAIN();
