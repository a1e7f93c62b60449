#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace condense::detail {

// Strips '#' comments, returns trimmed line.
inline std::string strip_line(std::string line) {
  auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!line.empty() && is_space(line.front())) line.erase(line.begin());
  while (!line.empty() && is_space(line.back())) line.pop_back();
  return line;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace condense::detail
