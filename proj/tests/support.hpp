#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mintp/mintp.hpp"

namespace mintp::testing {

inline constexpr const char* kRunningExample =
    "source s\nsink t\n"
    "edge s 1\nedge 1 2\nedge 1 3\nedge 2 t\nedge 3 4\nedge 4 1\nedge 4 5\nedge 5 4\n";

inline constexpr const char* kSelfLoop = "source 1\nsink 3\nedge 1 2\nedge 2 2\nedge 2 3\n";

inline constexpr const char* kDiamond = "source s\nsink t\nedge s a\nedge s b\nedge a t\nedge b t\n";

inline DirectedGraph graph(const std::string& text) { return parse_graph(text); }

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(MINTP_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Path path(const DirectedGraph& g, const std::string& names) {
  Path p;
  std::istringstream in(names);
  for (std::string w; in >> w;) p.vertices.push_back(g.find(w).value());
  return p;
}

inline std::set<std::string> formatted(const DirectedGraph& g, const std::vector<Path>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(g.format(p));
  return out;
}

inline std::vector<Path> paths_of(const TestPathReport& rep) {
  std::vector<Path> out;
  for (const auto& tp : rep.paths) out.push_back(tp.path);
  return out;
}

// Brute-force covering check, independent of the matcher.
inline bool covers_all(const std::vector<Path>& walks, const RequirementSet& rs) {
  for (const auto& r : rs.requirements) {
    bool hit = false;
    for (const auto& w : walks) hit = hit || tours(w, r);
    if (!hit) return false;
  }
  return true;
}

}  // namespace mintp::testing
