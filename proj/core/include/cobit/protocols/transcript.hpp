#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cobit/calculus/resource.hpp"
#include "cobit/types.hpp"

namespace cobit::protocols {

// One logged action inside a protocol run. `op` is a short machine-readable
// verb ("local-unitary", "coherent-copy", "measure", ...); `targets` lists the
// subsystem labels it touched.
struct TranscriptStep {
  std::string description;
  std::string op;
  std::vector<std::string> targets;
};

// Complete record of one protocol execution. `consumed` and `produced` are
// net of catalysts: resources that are borrowed and handed back intact appear
// only in `catalysts` (and as borrow/return steps in the log).
struct Transcript {
  std::string protocol;
  std::uint64_t seed = 0;
  std::vector<TranscriptStep> steps;
  calculus::ResourceVector consumed;
  calculus::ResourceVector produced;
  calculus::ResourceVector catalysts;
  double final_fidelity = 0.0;
  std::string target_description;
  std::string status = "ok";
  std::optional<PureState> final_state;

  void note(std::string description, std::string op, std::vector<std::string> targets = {});
};

nlohmann::json transcript_to_json(const Transcript& t, bool include_state = false);

}  // namespace cobit::protocols
