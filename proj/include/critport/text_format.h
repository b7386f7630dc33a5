#pragma once

// Line-oriented text formats shared by portraits, orbit portraits and
// lamination dumps.
//
//   d=<int>          first line of a portrait / orbit-portrait file
//   1/9 7/9          one angle set per following line
//
// Blank lines and lines starting with '#' are ignored.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "critport/angle.h"

namespace critport {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DegreeAndSets {
  int degree = 0;
  std::vector<AngleSet> sets;
};

/// Parses the `d=<int>` header and one angle set per line. Requires d >= 2
/// and rejects duplicate angles within a line.
DegreeAndSets parse_degree_and_sets(std::string_view text);

std::string format_degree_and_sets(int degree, const std::vector<AngleSet> &sets);

/// Parses a lamination dump: one class per line, no header.
std::vector<AngleSet> parse_angle_set_lines(std::string_view text);

std::string read_text_file(const std::string &path);

}  // namespace critport
