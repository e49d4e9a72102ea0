#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "femtoho/config.hpp"

namespace femtoho {

/// Config files are line oriented: `key = value`, `#` starts a comment,
/// keys are SimConfig field names. List values are comma separated.
/// Unknown keys and unparsable values raise ConfigError naming the line.
void apply_config_text(SimConfig& config, std::string_view text, std::string_view origin = "<text>");
void apply_config_file(SimConfig& config, const std::filesystem::path& path);

/// Sets one field from its textual value. Throws ConfigError on unknown key.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

std::vector<std::string> config_keys();

/// Serializes every field as `key = value` lines; reading it back
/// reproduces the config exactly.
std::string format_config(const SimConfig& config);

}  // namespace femtoho
