#pragma once

#include <string>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/graph.hpp"

namespace affcover {

enum class KernelVerdict { Reduced, RejectedByCounts };

struct KernelResult {
  Graph h;
  KernelVerdict verdict = KernelVerdict::Reduced;
  std::vector<int> vertex_map;                 // H vertex -> G vertex (empty when rejected)
  std::vector<std::vector<int>> dropped_paths; // path components of G, smaller end first
  std::string reason;                          // why the counts rejected G
};

inline long long choose2(long long k) { return k * (k - 1) / 2; }

// K_{1,2k+1}: needs k+1 lines, so it is a no-instance for k.
inline Graph rejection_sentinel(int k) {
  Graph s(2 * k + 2);
  for (int i = 1; i <= 2 * k + 1; ++i) s.add_edge(0, i);
  return s;
}

inline KernelResult kernelize(const Graph& g, int k, int d = 2) {
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1, got " + std::to_string(k));
  if (d != 2 && d != 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 2 or 3");
  KernelResult out;
  const long long K = choose2(k);
  const long long lin = 2LL * (static_cast<long long>(k) * k - k);

  std::vector<char> alive(g.order(), 1);
  for (const auto& comp : components(g)) {
    bool isolated = comp.size() == 1;
    if (!isolated && !is_path_component(g, comp)) continue;
    for (int v : comp) alive[v] = 0;
    std::vector<int> seq;
    if (isolated) {
      seq = comp;
    } else {
      int start = -1;
      for (int v : comp)
        if (g.degree(v) == 1) {
          start = v;
          break;
        }
      int prev = -1, cur = start;
      while (cur >= 0) {
        seq.push_back(cur);
        int nxt = -1;
        for (int w : g.neighbors(cur))
          if (w != prev) nxt = w;
        prev = cur;
        cur = nxt;
      }
    }
    out.dropped_paths.push_back(std::move(seq));
  }

  long long v3 = 0, v1 = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (!alive[v]) continue;
    if (g.degree(v) >= 3) ++v3;
    if (g.degree(v) == 1) ++v1;
  }
  // the remainder has no path components, so its straight structure can be
  // read off the whole graph restricted to alive vertices
  StraightStructure st;
  {
    auto full = straight_structure(g);
    for (auto& p : full.paths)
      if (alive[p.first()]) st.paths.push_back(std::move(p));
    for (auto& c : full.cycles)
      if (alive[c.front()]) st.cycles.push_back(std::move(c));
  }
  auto reject = [&](std::string why) {
    out.verdict = KernelVerdict::RejectedByCounts;
    out.h = rejection_sentinel(k);
    out.vertex_map.clear();
    out.reason = std::move(why);
    return out;
  };
  if (v3 > K) return reject(std::to_string(v3) + " vertices of degree >= 3 exceed C(k,2) = " + std::to_string(K));
  if (v1 > lin) return reject(std::to_string(v1) + " degree-1 vertices exceed 2(k^2-k) = " + std::to_string(lin));
  if (static_cast<long long>(st.paths.size()) > lin)
    return reject(std::to_string(st.paths.size()) + " straight paths exceed 2(k^2-k) = " + std::to_string(lin));
  long long cyc = static_cast<long long>(st.cycles.size());
  if (v3 + 3 * cyc > K)
    return reject(std::to_string(cyc) + " cycle components need " + std::to_string(3 * cyc) +
                  " crossings; with the branch vertices this exceeds C(k,2) = " + std::to_string(K));

  std::vector<std::pair<int, int>> edges;
  std::vector<char> keep(g.order(), 0);
  for (int v = 0; v < g.order(); ++v)
    if (alive[v] && g.degree(v) != 2) keep[v] = 1;
  for (const auto& p : st.paths) {
    const auto& s = p.vertices;
    long long interior = static_cast<long long>(s.size()) - 2;
    long long limit = p.first() == p.last() ? std::max<long long>(K, 2) : K;
    long long kept = std::min(interior, limit);
    int prev = s.front();
    for (long long t = 1; t <= kept; ++t) {
      keep[s[t]] = 1;
      edges.emplace_back(prev, s[t]);
      prev = s[t];
    }
    edges.emplace_back(prev, s.back());
  }
  for (const auto& c : st.cycles) {
    long long len = std::min<long long>(static_cast<long long>(c.size()), std::max<long long>(K, 3));
    for (long long t = 0; t < len; ++t) {
      keep[c[t]] = 1;
      edges.emplace_back(c[t], c[(t + 1) % len]);
    }
  }
  std::vector<int> id(g.order(), -1);
  for (int v = 0; v < g.order(); ++v) {
    if (!keep[v]) continue;
    id[v] = static_cast<int>(out.vertex_map.size());
    out.vertex_map.push_back(v);
  }
  out.h = Graph(static_cast<int>(out.vertex_map.size()));
  for (auto [a, b] : edges) out.h.add_edge(id[a], id[b]);
  return out;
}

}  // namespace affcover
