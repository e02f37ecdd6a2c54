#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace revroles {

std::string read_file(const std::filesystem::path& path);

// Writes content to a temp file in the target directory, then renames it
// into place, so failures never leave a partial output file.
void atomic_write_file(const std::filesystem::path& path,
                       std::string_view content);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace revroles
