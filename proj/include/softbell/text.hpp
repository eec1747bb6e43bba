#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softbell::text {

// Shortest representation that parses back to the same double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_integer(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace softbell::text
