#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fspesoa {

/// Shortest decimal form that parses back to the same double (std::to_chars).
std::string format_double(double value);

/// Full-string parse of a finite double; nullopt on any trailing garbage,
/// empty input, NaN, or infinity.
std::optional<double> parse_double(std::string_view text);

/// Split one CSV record. Handles double-quoted fields with doubled quotes
/// and strips a trailing carriage return.
std::vector<std::string> split_csv_record(std::string_view line, char delimiter = ',');

/// Quote a field if it contains the delimiter, a quote, or a newline.
std::string csv_escape(std::string_view field, char delimiter = ',');

}  // namespace fspesoa
