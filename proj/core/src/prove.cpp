#include "cobit/calculus/prove.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>

namespace cobit::calculus {

std::string to_string(ProveStatus s) {
  switch (s) {
    case ProveStatus::Found: return "found";
    case ProveStatus::NotFound: return "not-found";
    case ProveStatus::SearchCapped: return "search-capped";
  }
  throw std::invalid_argument("unknown prove status");
}

namespace {

bool rule_applies(const ConversionRule& rule, const ResourceVector& state) {
  return state.contains(rule.lhs + rule.catalyst);
}

ResourceVector fire(const ConversionRule& rule, const ResourceVector& state) {
  return state - rule.lhs + rule.rhs;
}

// Replays a found step sequence from a bare start state (no borrowed budget)
// to decide whether the catalyst budget was load-bearing.
bool replays_without_budget(const ResourceVector& start, const ResourceVector& goal,
                            const std::vector<DerivationStep>& steps) {
  ResourceVector state = start;
  for (const DerivationStep& step : steps) {
    const ConversionRule& rule = rule_by_id(step.rule_id);
    if (!rule_applies(rule, state)) return false;
    state = fire(rule, state);
  }
  return state.contains(goal);
}

}  // namespace

Derivation prove(const ResourceVector& start, const ResourceVector& goal,
                 const ProveOptions& options) {
  if (options.max_depth < 0 || options.max_depth > 32)
    throw std::invalid_argument("max_depth must be in [0, 32]");
  if (options.max_states == 0) throw std::invalid_argument("max_states must be positive");

  Derivation out;
  const ResourceVector target = goal + options.catalyst_budget;
  const ResourceVector root = start + options.catalyst_budget;

  struct ParentInfo {
    ResourceVector parent;
    std::string rule_id;
    int depth = 0;
  };
  std::map<ResourceVector, ParentInfo> seen;
  seen.emplace(root, ParentInfo{ResourceVector{}, "", 0});
  std::deque<ResourceVector> frontier{root};

  bool pruned = false;
  std::optional<ResourceVector> hit;
  if (root.contains(target)) hit = root;

  while (!hit && !frontier.empty()) {
    ResourceVector state = frontier.front();
    frontier.pop_front();
    int depth = seen.at(state).depth;
    if (depth >= options.max_depth) {
      pruned = true;
      continue;
    }
    for (const ConversionRule& rule : rule_db()) {
      if (rule.asymptotic && !options.allow_asymptotic) continue;
      if (!rule_applies(rule, state)) continue;
      ResourceVector next = fire(rule, state);
      if (seen.count(next)) continue;
      if (seen.size() >= options.max_states) {
        pruned = true;
        break;
      }
      seen.emplace(next, ParentInfo{state, rule.id, depth + 1});
      if (next.contains(target)) {
        hit = next;
        break;
      }
      frontier.push_back(next);
    }
  }
  out.states_explored = seen.size();

  if (!hit) {
    out.status = pruned ? ProveStatus::SearchCapped : ProveStatus::NotFound;
    return out;
  }

  out.status = ProveStatus::Found;
  ResourceVector cursor = *hit;
  std::vector<DerivationStep> steps;
  while (true) {
    const ParentInfo& info = seen.at(cursor);
    if (info.rule_id.empty()) break;
    steps.push_back({info.rule_id, info.parent, cursor});
    cursor = info.parent;
  }
  std::reverse(steps.begin(), steps.end());
  out.steps = std::move(steps);

  for (const DerivationStep& step : out.steps)
    if (rule_by_id(step.rule_id).asymptotic) out.used_asymptotic = true;

  out.used_catalysis = !options.catalyst_budget.empty() &&
                       !replays_without_budget(start, goal, out.steps);
  return out;
}

EqualityResult check_equality(const ResourceVector& lhs, const ResourceVector& rhs,
                              const ProveOptions& options) {
  EqualityResult out;
  out.forward = prove(lhs, rhs, options);
  out.backward = prove(rhs, lhs, options);
  out.equal = out.forward.status == ProveStatus::Found &&
              out.backward.status == ProveStatus::Found;
  return out;
}

nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json steps = nlohmann::json::array();
  for (const DerivationStep& s : d.steps)
    steps.push_back({{"rule", s.rule_id},
                     {"before", resource_vector_to_json(s.before)},
                     {"after", resource_vector_to_json(s.after)}});
  return {{"status", to_string(d.status)},
          {"steps", std::move(steps)},
          {"used_catalysis", d.used_catalysis},
          {"used_asymptotic", d.used_asymptotic},
          {"states_explored", d.states_explored}};
}

}  // namespace cobit::calculus
