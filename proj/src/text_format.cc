#include "critport/text_format.h"

#include <charconv>
#include <fstream>
#include <sstream>

namespace critport {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

AngleSet parse_set_line(std::string_view line, int line_no) {
  std::vector<Angle> angles;
  std::istringstream in{std::string(line)};
  std::string token;
  try {
    while (in >> token) {
      angles.push_back(Angle::parse(token));
    }
  } catch (const AngleError &e) {
    throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
  }
  AngleSet set(angles);
  if (set.size() != angles.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": duplicate angle");
  }
  return set;
}

template <typename F>
void for_each_line(std::string_view text, F &&f) {
  int line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (!skippable(line)) {
      f(line, line_no);
    }
  }
}

}  // namespace

DegreeAndSets parse_degree_and_sets(std::string_view text) {
  DegreeAndSets out;
  bool have_header = false;
  for_each_line(text, [&](std::string_view line, int line_no) {
    if (!have_header) {
      if (line.substr(0, 2) != "d=") {
        throw FormatError("line " + std::to_string(line_no) + ": expected 'd=<int>'");
      }
      std::string_view digits = trim(line.substr(2));
      int d = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": malformed degree");
      }
      if (d < 2) {
        throw FormatError("degree must be at least 2, got " + std::to_string(d));
      }
      out.degree = d;
      have_header = true;
      return;
    }
    out.sets.push_back(parse_set_line(line, line_no));
  });
  if (!have_header) {
    throw FormatError("missing 'd=<int>' header");
  }
  return out;
}

std::string format_degree_and_sets(int degree, const std::vector<AngleSet> &sets) {
  std::string out = "d=" + std::to_string(degree) + "\n";
  for (const auto &s : sets) {
    out += s.str();
    out += '\n';
  }
  return out;
}

std::vector<AngleSet> parse_angle_set_lines(std::string_view text) {
  std::vector<AngleSet> out;
  for_each_line(text, [&](std::string_view line, int line_no) { out.push_back(parse_set_line(line, line_no)); });
  return out;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace critport
