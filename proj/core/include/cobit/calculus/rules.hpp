#pragma once

#include <string>
#include <vector>

#include "cobit/calculus/resource.hpp"

namespace cobit::calculus {

// One admissible conversion between resource multisets. The catalyst must be
// present for the rule to fire but is returned intact. Asymptotic rules hold
// only in the many-copy limit and are gated behind an explicit opt-in. Rules
// with a nonempty `protocol` tag are backed by an executable laboratory
// protocol and can be certified by simulation.
struct ConversionRule {
  std::string id;
  ResourceVector lhs;
  ResourceVector rhs;
  ResourceVector catalyst;
  bool asymptotic = false;
  std::string protocol;
  std::string source;
};

const std::vector<ConversionRule>& rule_db();
const ConversionRule& rule_by_id(const std::string& id);

nlohmann::json rule_to_json(const ConversionRule& rule);

}  // namespace cobit::calculus
