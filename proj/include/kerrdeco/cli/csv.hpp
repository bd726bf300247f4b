#pragma once

// CSV emission: 12 significant digits, shortest general form, no locale.

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace kerrdeco::cli {

inline constexpr int kCsvDigits = 12;

inline std::string format_number(double v) {
  if (!std::isfinite(v)) throw std::domain_error("csv: non-finite value");
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, kCsvDigits);
  if (res.ec != std::errc{}) throw std::runtime_error("csv: number formatting failed");
  return std::string(buf, res.ptr);
}

inline void write_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_number(values[i]);
  }
  os << '\n';
}

inline void write_header(std::ostream& os, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ',';
    os << names[i];
  }
  os << '\n';
}

// "0,10,20" -> {0, 10, 20}; empty or blank input gives an empty list.
inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size() || !std::isfinite(v))
      throw std::invalid_argument("invalid number '" + std::string(item) + "' in list");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace kerrdeco::cli
