#pragma once

#include <string>
#include <string_view>

namespace cwerank {

/// Shortest decimal text that parses back to `value`.
std::string format_real(double value);

/// Rounds the shortest decimal representation of `value` half-up (away
/// from zero) to `decimals` places. 78.305 renders as "78.31".
std::string format_half_up(double value, int decimals);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view field);

} // namespace cwerank
