#pragma once

#include "splitnash/spec_io.hpp"

#include <optional>
#include <string>

namespace splitnash {

// Exit codes: 0 every asserted claim verified (or nothing asserted),
// 1 an asserted claim failed or a scheduled assertion was cut off by a cap,
// 2 input error. The machine document repeats the code under "exit".
struct AnalysisReport {
  int exit_code = 0;
  nlohmann::json machine;
  std::string text;
};

// command is one of: validate, nash, split, infsplit, discounted, theoremA,
// theorem1, theorem2, prop1, bertrand-theorem3, bertrand-corollary4,
// bertrand-static. target names an entry in the command's section of the
// spec; empty picks the sole entry when unambiguous. seed is echoed into the
// report. Deterministic except for the timing_ms field.
AnalysisReport run_command(const GameSpec& spec, const std::string& command,
                           const std::string& target = "",
                           std::optional<long> seed = std::nullopt);

}  // namespace splitnash
