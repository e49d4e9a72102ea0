#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "femtoho/config.hpp"

namespace femtoho {

enum class PresetName { Fig10, Fig11, SingleRun };

std::optional<PresetName> parse_preset(std::string_view token);

/// Everything an experiment needs once the config overlay is applied.
struct ExperimentPreset {
  PresetName name = PresetName::SingleRun;
  SimConfig config;
  std::vector<double> distances;
  std::vector<Algorithm> algorithms;
  int replications = 1;
};

ExperimentPreset resolve_preset(PresetName name, const SimConfig& config);

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point of the `femtoho` tool. args[0] is the program name.
int main(const std::vector<std::string>& args);

}  // namespace cli
}  // namespace femtoho
