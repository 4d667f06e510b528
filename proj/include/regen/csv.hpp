#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace regen::csv {

// RFC 4180 table: one header row, CRLF-free ('\n') line endings, fields
// quoted only when they contain a comma, quote or newline.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
  double number(std::size_t row, const std::string& name) const;  // "NA" -> NaN
};

// 8 significant digits, '.' decimal; NaN and infinities as "NA".
std::string format_number(double x);
std::string format_integer(std::int64_t x);

void write(std::ostream& out, const Table& table);
std::string to_string(const Table& table);

// Throws regen::ConfigError on malformed input.
Table parse(std::istream& in);
Table parse(const std::string& text);

} // namespace regen::csv
