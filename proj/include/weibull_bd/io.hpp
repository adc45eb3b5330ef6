#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "weibull_bd/error.hpp"

namespace weibull_bd {

/// Reads decimal numbers separated by whitespace and/or commas. Blank lines and
/// lines whose first non-blank character is '#' are skipped.
inline std::vector<double> parse_values(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    const auto first = rest.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || rest[first] == '#') continue;

    constexpr std::string_view kSeparators = " \t\r,";
    while (!rest.empty()) {
      const auto start = rest.find_first_not_of(kSeparators);
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto end = std::min(rest.find_first_of(kSeparators), rest.size());
      const std::string_view token = rest.substr(0, end);

      double v = 0.0;
      std::string_view digits = token;
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": not a number: '" + std::string(token) + "'");
      }
      values.push_back(v);
      rest.remove_prefix(end);
    }
  }
  if (values.empty()) throw Error(ErrorCode::EmptyFile, "no numeric values found");
  return values;
}

inline std::vector<double> parse_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return parse_values(in);
}

}  // namespace weibull_bd
