#include "evmix/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace evmix {

std::string num_to_string(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string num_to_display(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return std::string(buf);
}

double parse_number(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty number token");
  const char* begin = t.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + t.size() || !std::isfinite(v))
    throw std::invalid_argument("not a finite number: '" + t + "'");
  return v;
}

long long parse_integer(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty integer token");
  const char* begin = t.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end != begin + t.size())
    throw std::invalid_argument("not an integer: '" + t + "'");
  return v;
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto b = s.begin();
  auto e = s.end();
  while (b != e && is_space(*b)) ++b;
  while (e != b && is_space(*(e - 1))) --e;
  return std::string(b, e);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace evmix
