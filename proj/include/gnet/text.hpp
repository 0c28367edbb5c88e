#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gnet::text {

/// Locale-independent decimal parse of the whole (trimmed) field. Accepts a
/// leading '+', forms like ".28", and exponents. Rejects empty input, trailing
/// junk and non-finite results.
std::optional<double> parse_double(std::string_view field);

/// Shortest representation that round-trips exactly ('.' decimal point always).
std::string format_double(double value);

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view line, char delimiter);

}  // namespace gnet::text
