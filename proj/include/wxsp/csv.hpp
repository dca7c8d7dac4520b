#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wxsp {

// Splits one CSV record (RFC 4180 quoting, no embedded newlines). Returns
// nullopt on an unterminated or misplaced quote.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

// Quotes a field when it contains a comma, quote or leading/trailing space.
std::string csv_field(std::string_view field);

}  // namespace wxsp
