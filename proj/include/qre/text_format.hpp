#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qre::text {

// Shortest decimal form that parses back to the same double.
std::string shortest(double value);

// Scientific notation with `digits` significant figures, e.g. 3.33e-04.
std::string scientific(double value, int digits = 3);

// Fixed notation with `decimals` digits after the point.
std::string fixed(double value, int decimals);

std::string csv_field(std::string_view field);

std::vector<std::string> split(std::string_view text, char sep);

std::string_view trim(std::string_view text);

// Whole-string numeric parsing; return false on trailing garbage.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

// Comma-separated records with RFC 4180 quoting. Blank lines and lines
// whose first character is '#' are skipped; `line` is 1-based.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};
std::vector<CsvRecord> read_csv(std::string_view text);

// Renders rows as a left-aligned, space-padded text table.
std::string aligned_table(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows);

}  // namespace qre::text
