#pragma once

#include <filesystem>
#include <stdexcept>
#include <string_view>

namespace femtoho {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes via a temporary sibling file and rename, so readers never see a
/// partially written file. Creates parent directories. Throws OutputError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace femtoho
