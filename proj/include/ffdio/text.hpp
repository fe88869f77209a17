#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ffdio/errors.hpp"

namespace ffdio {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

// Splits on `sep` outside parentheses.
inline std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      parts.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.emplace_back(trim(s.substr(start)));
  return parts;
}

// "[e0 <sep> e1 <sep> ...]" -> element texts.
inline std::vector<std::string> split_bracketed(std::string_view text, char sep) {
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError(0, "expected a bracketed list \"[ ... " + std::string(1, sep) + " ... ]\"");
  return split_top_level(s.substr(1, s.size() - 2), sep);
}

}  // namespace ffdio
