#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cobit/calculus/resource.hpp"
#include "cobit/calculus/rules.hpp"

namespace cobit::calculus {

struct ProveOptions {
  ResourceVector catalyst_budget;  // borrowed up front, must be intact at the goal
  bool allow_asymptotic = false;
  int max_depth = 12;  // hard cap 32
  std::size_t max_states = 1'000'000;
};

enum class ProveStatus { Found, NotFound, SearchCapped };

std::string to_string(ProveStatus s);

struct DerivationStep {
  std::string rule_id;
  ResourceVector before;  // includes any borrowed catalyst budget
  ResourceVector after;
};

struct Derivation {
  ProveStatus status = ProveStatus::NotFound;
  std::vector<DerivationStep> steps;
  bool used_catalysis = false;   // the budget was actually needed
  bool used_asymptotic = false;  // some step fired an asymptotic rule
  std::size_t states_explored = 0;
};

// Breadth-first search over resource multisets: does `start` convert into (at
// least) `goal` under the rule database? The catalyst budget is added to the
// start state and must still be present, on top of the goal, at the end.
Derivation prove(const ResourceVector& start, const ResourceVector& goal,
                 const ProveOptions& options = {});

struct EqualityResult {
  Derivation forward;
  Derivation backward;
  bool equal = false;
};

EqualityResult check_equality(const ResourceVector& lhs, const ResourceVector& rhs,
                              const ProveOptions& options = {});

nlohmann::json derivation_to_json(const Derivation& d);

}  // namespace cobit::calculus
