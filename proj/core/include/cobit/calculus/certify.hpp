#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cobit/calculus/rules.hpp"
#include "cobit/protocols/transcript.hpp"

namespace cobit::calculus {

struct CertificationResult {
  std::string rule_id;
  bool passed = false;
  double fidelity = 0.0;
  std::string detail;  // empty when passed; otherwise what went wrong
  protocols::Transcript transcript;
};

// Runs the laboratory protocol backing `rule` on a seeded generic input and
// checks that the transcript's ledger equals the rule exactly (consumed,
// produced, and catalyst, as rationals) and that the final state hits its
// target with fidelity >= 1 - 1e-9. Throws std::invalid_argument for rules
// with no backing protocol (asymptotic or construction-only rules).
CertificationResult certify_rule_by_simulation(const ConversionRule& rule,
                                               std::uint64_t seed);

// Certifies every rule in the database that carries a protocol tag.
std::vector<CertificationResult> certify_all_simulable(std::uint64_t seed);

}  // namespace cobit::calculus
