#include "cobit/protocols/transcript.hpp"

#include "cobit/serialize.hpp"

namespace cobit::protocols {

void Transcript::note(std::string description, std::string op, std::vector<std::string> targets) {
  steps.push_back({std::move(description), std::move(op), std::move(targets)});
}

nlohmann::json transcript_to_json(const Transcript& t, bool include_state) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"desc", s.description}, {"op", s.op}, {"targets", s.targets}});
  nlohmann::json out{
      {"protocol", t.protocol},
      {"seed", t.seed},
      {"steps", std::move(steps)},
      {"consumed", calculus::resource_vector_to_json(t.consumed)},
      {"produced", calculus::resource_vector_to_json(t.produced)},
      {"catalysts", calculus::resource_vector_to_json(t.catalysts)},
      {"final_fidelity", t.final_fidelity},
      {"target", t.target_description},
      {"status", t.status},
  };
  if (include_state && t.final_state.has_value())
    out["final_state"] = state_to_json(*t.final_state);
  return out;
}

}  // namespace cobit::protocols
