#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/graph.hpp"

namespace affcover {

// Per line, the vertex-disjoint paths drawn on it, in their order along the line.
struct CombinatorialDescription {
  std::vector<std::vector<std::vector<int>>> lines;

  int k() const { return static_cast<int>(lines.size()); }
  bool operator==(const CombinatorialDescription&) const = default;
};

// Empty string if `d` is a valid description of `g`, otherwise the reason.
inline std::string description_problem(const Graph& g, const CombinatorialDescription& d) {
  std::set<Edge> used;
  for (int i = 0; i < d.k(); ++i) {
    std::set<int> on_line;
    for (const auto& path : d.lines[i]) {
      if (path.size() < 2) return "line " + std::to_string(i + 1) + " has a path with fewer than two vertices";
      for (size_t t = 0; t < path.size(); ++t) {
        int v = path[t];
        if (v < 0 || v >= g.order()) return "vertex out of range on line " + std::to_string(i + 1);
        if (!on_line.insert(v).second)
          return "vertex " + std::to_string(v + 1) + " appears twice on line " + std::to_string(i + 1);
        if (t == 0) continue;
        int u = path[t - 1];
        if (!g.has_edge(u, v))
          return "line " + std::to_string(i + 1) + " uses non-edge " + std::to_string(u + 1) + "-" +
                 std::to_string(v + 1);
        if (!used.insert(Edge(u, v)).second)
          return "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " is on two lines";
      }
    }
  }
  if (static_cast<int>(used.size()) != g.size()) return "some edge is on no line";
  return {};
}

inline void check_description(const Graph& g, const CombinatorialDescription& d) {
  if (auto p = description_problem(g, d); !p.empty()) throw Error(ErrorCode::InconsistentDescription, p);
}

inline std::string format_description(const CombinatorialDescription& d) {
  std::ostringstream os;
  for (int i = 0; i < d.k(); ++i) {
    os << "line " << i + 1 << ':';
    for (const auto& path : d.lines[i]) {
      os << " (";
      for (size_t t = 0; t < path.size(); ++t) os << (t ? " " : "") << path[t] + 1;
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace affcover
