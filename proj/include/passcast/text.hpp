#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace passcast {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Parses the whole of `s` as a double (or integer); nullopt otherwise.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

/// Splits on a single character; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits on runs of spaces/tabs; no empty fields.
std::vector<std::string_view> split_ws(std::string_view s);

}  // namespace passcast
