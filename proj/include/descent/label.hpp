#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

// Element labels form a tree: label := atom | "(" label "," label ")".
// Inside atoms the characters \ ( ) , are escaped with a backslash, so any
// label produced by pairing can be split back unambiguously.

namespace descent {

inline bool is_special(char c) { return c == '\\' || c == '(' || c == ')' || c == ','; }

inline std::string escape_atom(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (is_special(c)) out += '\\';
    out += c;
  }
  return out;
}

inline std::string pair_label(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

namespace detail {

// Parses one label starting at s[i]; returns the index one past it or npos.
inline std::size_t parse_label(std::string_view s, std::size_t i) {
  if (i >= s.size()) return std::string_view::npos;
  if (s[i] == '(') {
    i = parse_label(s, i + 1);
    if (i == std::string_view::npos || i >= s.size() || s[i] != ',') return std::string_view::npos;
    i = parse_label(s, i + 1);
    if (i == std::string_view::npos || i >= s.size() || s[i] != ')') return std::string_view::npos;
    return i + 1;
  }
  std::size_t start = i;
  while (i < s.size()) {
    if (s[i] == '\\') {
      if (i + 1 >= s.size() || !is_special(s[i + 1])) return std::string_view::npos;
      i += 2;
    } else if (is_special(s[i])) {
      break;
    } else {
      ++i;
    }
  }
  return i == start ? std::string_view::npos : i;
}

}  // namespace detail

/// Non-empty and well formed per the grammar above.
inline bool is_valid_label(std::string_view s) {
  return !s.empty() && detail::parse_label(s, 0) == s.size();
}

/// Components of a pair label, or nothing for atoms and malformed input.
inline std::optional<std::pair<std::string, std::string>> split_pair(std::string_view s) {
  if (s.size() < 5 || s.front() != '(' || !is_valid_label(s)) return std::nullopt;
  const auto mid = detail::parse_label(s, 1);
  return std::pair{std::string(s.substr(1, mid - 1)),
                   std::string(s.substr(mid + 1, s.size() - mid - 2))};
}

inline std::string unescape_atom(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

}  // namespace descent
