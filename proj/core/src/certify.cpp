#include "cobit/calculus/certify.hpp"

#include <stdexcept>

#include "cobit/protocols/protocols.hpp"
#include "cobit/random.hpp"

namespace cobit::calculus {

namespace {

protocols::Transcript run_backing_protocol(const ConversionRule& rule, std::uint64_t seed) {
  std::mt19937_64 rng = substream(seed, "certify:" + rule.id);
  if (rule.protocol == "cobit-to-cbit") return protocols::cobit_to_cbit(haar_vector(2, rng));
  if (rule.protocol == "cobit-to-ebit") return protocols::cobit_to_ebit();
  if (rule.protocol == "coherent-superdense-coding")
    return protocols::coherent_superdense_coding(haar_vector(4, rng));
  if (rule.protocol == "coherent-teleportation")
    return protocols::coherent_teleportation(haar_vector(2, rng));
  if (rule.protocol == "cnot-to-coherent-bidirectional")
    return protocols::cnot_to_coherent_bidirectional(haar_vector(4, rng));
  if (rule.protocol == "coherent-distributed-cnot")
    return protocols::coherent_distributed_cnot(haar_vector(4, rng));
  throw std::invalid_argument("rule '" + rule.id + "' is not simulable" +
                              (rule.asymptotic ? " (asymptotic statement)" : ""));
}

}  // namespace

CertificationResult certify_rule_by_simulation(const ConversionRule& rule,
                                               std::uint64_t seed) {
  if (rule.protocol.empty())
    throw std::invalid_argument("rule '" + rule.id + "' is not simulable" +
                                (rule.asymptotic ? " (asymptotic statement)" : ""));

  CertificationResult out;
  out.rule_id = rule.id;
  protocols::Transcript t = run_backing_protocol(rule, seed);
  t.seed = seed;
  out.fidelity = t.final_fidelity;

  std::string detail;
  if (t.consumed != rule.lhs)
    detail += "consumed " + t.consumed.to_string() + " but the rule spends " +
              rule.lhs.to_string() + "; ";
  if (t.produced != rule.rhs)
    detail += "produced " + t.produced.to_string() + " but the rule yields " +
              rule.rhs.to_string() + "; ";
  if (t.catalysts != rule.catalyst)
    detail += "borrowed " + t.catalysts.to_string() + " but the rule allows " +
              rule.catalyst.to_string() + "; ";
  if (t.final_fidelity < 1.0 - 1e-9)
    detail += "final fidelity " + std::to_string(t.final_fidelity) + " below 1 - 1e-9; ";

  out.passed = detail.empty();
  out.detail = std::move(detail);
  out.transcript = std::move(t);
  return out;
}

std::vector<CertificationResult> certify_all_simulable(std::uint64_t seed) {
  std::vector<CertificationResult> out;
  for (const ConversionRule& rule : rule_db())
    if (!rule.protocol.empty()) out.push_back(certify_rule_by_simulation(rule, seed));
  return out;
}

}  // namespace cobit::calculus
