#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace txrate {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/// Splits on sep; fields are views into `line` (no quoting rules, the
/// formats here never embed separators).
std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

/// Parses a finite double out of the whole field.
bool parse_double_field(std::string_view field, double& out);

/// Parses a non-negative integer out of the whole field.
bool parse_int_field(std::string_view field, int& out);

/// Strips one trailing '\r' (files written on Windows).
std::string_view strip_cr(std::string_view line);

}  // namespace txrate
