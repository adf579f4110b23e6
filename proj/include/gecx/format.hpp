#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gecx {

// Shortest decimal text that parses back to exactly v.
std::string format_number(double v);

// Whole-string parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_number(std::string_view s);

}  // namespace gecx
