#pragma once

#include <string>
#include <vector>

namespace spectral_clt {

inline constexpr const char* kCsvVersionLine = "# spectral-clt v1";

// Round-trippable, byte-stable rendering (%.17g).
std::string fmt_double(double v);

// RFC4180-style quoting, applied only when the field needs it.
std::string csv_quote(const std::string& field);

// Quote-aware split of one CSV line.
std::vector<std::string> csv_split(const std::string& line);

// Writes lines joined by '\n'; path "-" or "" means stdout.
void write_lines(const std::string& path, const std::vector<std::string>& lines);

std::vector<std::string> read_lines(const std::string& path);

} // namespace spectral_clt
