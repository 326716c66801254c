#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "cycdisc/errors.hpp"

namespace cycdisc::detail {

struct Line {
  int number;
  std::string_view text;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Non-empty lines with '#' comments stripped.
inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
  }
  return out;
}

[[noreturn]] inline void fail(const Line& line, const std::string& what) {
  throw ParseError("line " + std::to_string(line.number) + ": " + what + " in \"" +
                   std::string(line.text) + "\"");
}

// Every maximal digit run in s, in order. Anything other than digits, spaces and
// the punctuation in `allowed` is rejected.
inline std::vector<int> integers(const Line& line, std::string_view s, std::string_view allowed) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      int value = 0;
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
      if (ec != std::errc{}) fail(line, "number out of range");
      i = static_cast<std::size_t>(ptr - s.data());
      out.push_back(value);
    } else if (std::isspace(static_cast<unsigned char>(ch)) || allowed.find(ch) != std::string_view::npos) {
      ++i;
    } else {
      fail(line, std::string("unexpected character '") + ch + "'");
    }
  }
  return out;
}

// Parses the mandatory "n=<count>" header.
inline int parse_header(const std::vector<Line>& lines, int max_n) {
  if (lines.empty()) throw ParseError("missing header line \"n=<count>\"");
  const Line& h = lines.front();
  std::string_view t = h.text;
  if (t.substr(0, 2) != "n=") fail(h, "expected header \"n=<count>\"");
  t = trim(t.substr(2));
  int n = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
  if (ec != std::errc{} || ptr != t.data() + t.size()) fail(h, "bad vertex count");
  if (n < 1 || n > max_n) fail(h, "vertex count must be in 1.." + std::to_string(max_n));
  return n;
}

}  // namespace cycdisc::detail
