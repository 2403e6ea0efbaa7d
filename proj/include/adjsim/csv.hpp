#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adjsim::csv {

/// Quotes a field when it contains a comma, quote or newline (RFC 4180).
std::string field(std::string_view s);

/// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split(std::string_view line);

/// Splits text into lines, dropping a trailing '\r' and empty lines.
std::vector<std::string_view> lines(std::string_view text);

std::string number(const std::optional<double>& v);
std::optional<double> parse_number(std::string_view s);
long long parse_integer(std::string_view s);

}  // namespace adjsim::csv
