#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace regressor {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

/// Fixed-point rendering with `decimals` digits; never prints "-0.000...".
std::string format_fixed(double value, int decimals);

/// Strict dot-decimal parse of the whole of `text`. Rejects empty input,
/// trailing garbage, and non-finite results.
std::optional<double> parse_real(std::string_view text);

}  // namespace regressor
