#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace claimgate::csv {

// One physical line split into fields. Double-quoted fields may contain
// commas and "" escapes; embedded newlines are not supported.
// Returns std::nullopt for an unterminated quote.
std::optional<std::vector<std::string>> split_line(std::string_view line);

// Quotes a field when it contains a comma, quote or leading/trailing space.
std::string escape(std::string_view field);

std::string_view trim(std::string_view s) noexcept;

// Reads the next line, stripping a trailing '\r'. Returns false at EOF.
bool read_line(std::istream& in, std::string& line);

// Strict number parsing: the whole (trimmed) field must be consumed.
std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_int(std::string_view field);

}  // namespace claimgate::csv
