#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stancelp::io {

// Whole-file helpers. Failures throw Error(kIo) naming the path.
std::string ReadFile(const std::filesystem::path& path);
// Creates parent directories as needed; writes bytes verbatim.
void WriteFile(const std::filesystem::path& path, std::string_view bytes);

// Splits on LF, dropping a trailing CR from each line. A final empty line
// produced by a terminating newline is not returned.
std::vector<std::string_view> SplitLines(std::string_view text);

// RFC 4180 style field splitting (double-quoted fields may hold commas).
std::vector<std::string> SplitCsvRow(std::string_view line);
std::string CsvField(std::string_view value);

std::string_view Trim(std::string_view text);

// Locale-independent number conversion.
bool ParseDouble(std::string_view text, double* out);
bool ParseInt(std::string_view text, long long* out);
// Shortest representation that parses back to the identical double.
std::string FormatExact(double value);
// printf("%.{digits}g") without locale influence.
std::string FormatSignificant(double value, int digits);

}  // namespace stancelp::io
