#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/graph.hpp"

namespace affcover {

struct WeakCoverResult {
  int value = 0;
  std::vector<std::vector<int>> partition;  // parts ordered by smallest vertex
};

constexpr int kWeakSearchLimit = 16;

namespace detail {

using Mask = std::uint32_t;

inline std::vector<int> members(Mask m) {
  std::vector<int> out;
  for (int v = 0; m; ++v, m >>= 1)
    if (m & 1) out.push_back(v);
  return out;
}

// Table of a hereditary vertex-subset predicate; `test` only sees subsets all
// of whose one-smaller subsets passed.
inline std::vector<char> hereditary_table(int n, const std::function<bool(Mask)>& test) {
  std::vector<char> ok(std::size_t{1} << n, 0);
  ok[0] = 1;
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    bool sub = true;
    for (Mask r = m; r && sub; r &= r - 1) sub = ok[m & ~(r & -r)];
    ok[m] = sub && test(m);
  }
  return ok;
}

// Fewest classes covering all vertices; among those, the partition whose parts,
// ordered by smallest vertex, are lexicographically least.
inline WeakCoverResult min_partition(int n, const std::vector<char>& ok) {
  const Mask full = (Mask{1} << n) - 1;
  constexpr int inf = 1 << 20;
  std::vector<int> best(std::size_t{1} << n, inf);
  best[0] = 0;
  for (Mask m = 1; m <= full && m != 0; ++m) {
    Mask low = m & -m, rest = m ^ low;
    for (Mask s = rest;; s = (s - 1) & rest) {
      Mask t = s | low;
      if (ok[t] && best[m ^ t] + 1 < best[m]) best[m] = best[m ^ t] + 1;
      if (s == 0) break;
    }
  }
  WeakCoverResult out;
  out.value = best[full];
  for (Mask m = full; m;) {
    Mask low = m & -m, rest = m ^ low;
    std::vector<int> pick;
    Mask chosen = 0;
    for (Mask s = rest;; s = (s - 1) & rest) {
      Mask t = s | low;
      if (ok[t] && best[m ^ t] + 1 == best[m]) {
        auto cand = members(t);
        if (!chosen || cand < pick) {
          pick = std::move(cand);
          chosen = t;
        }
      }
      if (s == 0) break;
    }
    out.partition.push_back(std::move(pick));
    m ^= chosen;
  }
  return out;
}

inline void check_limit(const Graph& g, int limit) {
  if (limit > 24) throw Error(ErrorCode::InvalidArgument, "exact-search limit above 24 vertices");
  if (g.order() > limit)
    throw Error(ErrorCode::TooLarge, "exact search handles at most " + std::to_string(limit) + " vertices, graph has " +
                                         std::to_string(g.order()));
}

inline std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.order(), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  }
  return adj;
}

}  // namespace detail

// Smallest partition of V into classes inducing linear forests.
inline WeakCoverResult linear_vertex_arboricity(const Graph& g, int limit = kWeakSearchLimit) {
  detail::check_limit(g, limit);
  auto adj = detail::adjacency_masks(g);
  // hereditary closure leaves only two checks: degree <= 2 and no cycle
  auto ok = detail::hereditary_table(g.order(), [&](detail::Mask m) {
    int edges = 0, verts = 0;
    for (int v : detail::members(m)) {
      int d = __builtin_popcount(adj[v] & m);
      if (d > 2) return false;
      edges += d;
      ++verts;
    }
    return edges / 2 < verts;  // otherwise m is a single cycle
  });
  return detail::min_partition(g.order(), ok);
}

// Smallest partition of V into classes inducing planar graphs.
inline WeakCoverResult vertex_thickness(const Graph& g, int limit = kWeakSearchLimit) {
  detail::check_limit(g, limit);
  auto ok = detail::hereditary_table(g.order(), [&](detail::Mask m) {
    auto vs = detail::members(m);
    return vs.size() <= 4 || is_planar(induced_subgraph(g, vs));
  });
  return detail::min_partition(g.order(), ok);
}

// Smallest partition of V into independent sets, as a witness.
inline WeakCoverResult minimum_coloring(const Graph& g, int limit = kWeakSearchLimit) {
  detail::check_limit(g, limit);
  auto adj = detail::adjacency_masks(g);
  auto ok = detail::hereditary_table(g.order(), [&](detail::Mask m) {
    for (int v : detail::members(m))
      if (adj[v] & m) return false;
    return true;
  });
  return detail::min_partition(g.order(), ok);
}

inline int chromatic_number(const Graph& g, int limit = kWeakSearchLimit) { return minimum_coloring(g, limit).value; }

}  // namespace affcover
