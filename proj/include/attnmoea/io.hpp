#pragma once

#include <string>
#include <string_view>

namespace attnmoea {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Inverse of format_double. Accepts "inf" and "-inf".
double parse_double(std::string_view text);

}  // namespace attnmoea
