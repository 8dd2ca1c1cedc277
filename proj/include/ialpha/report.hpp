#pragma once

// Shortest round-trip number formatting and atomic file output shared by the
// corpus writer and the command-line tool.

#include <filesystem>
#include <string>
#include <string_view>

namespace ialpha {

/// Shortest decimal that parses back to the same binary64. Non-finite values
/// print as nan, inf, -inf.
std::string format_double(double value);

/// Parses the whole of `text` as a double (accepts nan/inf). Returns false on
/// any leftover character.
bool parse_double(std::string_view text, double& value);

/// Writes to a sibling temp file and renames it over `path`. Throws DataError
/// (message prefix "io:") on failure.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ialpha
