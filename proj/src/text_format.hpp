#ifndef HYPSET_SRC_TEXT_FORMAT_HPP_
#define HYPSET_SRC_TEXT_FORMAT_HPP_

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hypset/freewords.hpp"

namespace hypset {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Header lines `key: value`, then edge lines `v, label, w`. `#` starts a
// comment line.
struct GraphText {
  std::map<std::string, std::string> header;
  std::vector<std::tuple<std::int32_t, char, std::int32_t>> edges;

  int integer(const std::string& key) const {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError("missing header '" + key + "'");
    try {
      return std::stoi(it->second);
    } catch (const std::exception&) {
      throw ParseError("header '" + key + "' is not an integer");
    }
  }
};

inline GraphText parse_graph_text(const std::string& text) {
  GraphText out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (auto colon = line.find(':'); colon != std::string::npos && line.find(',') == std::string::npos) {
      out.header[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
      continue;
    }
    std::istringstream fields(line);
    std::string a, l, b;
    if (!std::getline(fields, a, ',') || !std::getline(fields, l, ',') || !std::getline(fields, b)) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'vertex, label, vertex'");
    }
    l = trim(l);
    if (l.size() != 1) throw ParseError("line " + std::to_string(lineno) + ": bad label '" + l + "'");
    try {
      out.edges.emplace_back(std::stoi(trim(a)), l[0], std::stoi(trim(b)));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad vertex id");
    }
  }
  return out;
}

}  // namespace hypset

#endif  // HYPSET_SRC_TEXT_FORMAT_HPP_
