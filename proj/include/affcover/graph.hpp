#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "affcover/error.hpp"

namespace affcover {

struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  int other(int x) const { return x == u ? v : u; }
  bool touches(int x) const { return x == u || x == v; }
  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on vertices 0..n-1. Adjacency lists are kept sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<size_t>(check_order(n))) {}

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  int order() const { return static_cast<int>(adj_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }

  int add_vertex() {
    adj_.emplace_back();
    return order() - 1;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(u + 1));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v)
      throw Error(ErrorCode::DuplicateEdge,
                  "duplicate edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    edges_.emplace_back(u, v);
  }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= order() || v >= order()) return false;
    const auto& au = adj_[u];
    return std::binary_search(au.begin(), au.end(), v);
  }

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<Edge> sorted_edges() const {
    auto e = edges_;
    std::sort(e.begin(), e.end());
    return e;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  static int check_order(int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
    return n;
  }
  void check_vertex(int v) const {
    if (v < 0 || v >= order())
      throw Error(ErrorCode::InvalidArgument, "vertex id " + std::to_string(v + 1) + " out of range");
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

struct DegreeProfile {
  std::vector<int> v0;
  std::vector<int> v1;
  std::vector<int> v2;
  std::vector<int> v3plus;
};

inline DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile p;
  for (int v = 0; v < g.order(); ++v) {
    switch (std::min(g.degree(v), 3)) {
      case 0: p.v0.push_back(v); break;
      case 1: p.v1.push_back(v); break;
      case 2: p.v2.push_back(v); break;
      default: p.v3plus.push_back(v); break;
    }
  }
  return p;
}

// Connected components, each sorted, listed by smallest vertex.
inline std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<int> comp(g.order(), -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

inline bool is_path_component(const Graph& g, const std::vector<int>& comp) {
  if (comp.size() < 2) return false;
  long long deg_sum = 0;
  for (int v : comp) {
    if (g.degree(v) > 2) return false;
    deg_sum += g.degree(v);
  }
  return deg_sum / 2 == static_cast<long long>(comp.size()) - 1;
}

inline bool is_cycle_component(const Graph& g, const std::vector<int>& comp) {
  if (comp.size() < 3) return false;
  return std::all_of(comp.begin(), comp.end(), [&](int v) { return g.degree(v) == 2; });
}

// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> pos(g.order(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  Graph h(static_cast<int>(vertices.size()));
  for (size_t i = 0; i < vertices.size(); ++i)
    for (int w : g.neighbors(vertices[i]))
      if (pos[w] > static_cast<int>(i)) h.add_edge(static_cast<int>(i), pos[w]);
  return h;
}

enum class EndKind { Leaf, Branch };

struct StraightPath {
  std::vector<int> vertices;
  EndKind front = EndKind::Leaf;
  EndKind back = EndKind::Leaf;

  int first() const { return vertices.front(); }
  int last() const { return vertices.back(); }
  int interior_count() const { return static_cast<int>(vertices.size()) - 2; }
  bool operator==(const StraightPath&) const = default;
};

struct StraightStructure {
  std::vector<StraightPath> paths;
  // Bare cycle components, each starting at its smallest vertex and continuing
  // towards the smaller of its two neighbours.
  std::vector<std::vector<int>> cycles;
};

inline StraightStructure straight_structure(const Graph& g) {
  StraightStructure out;
  auto kind = [&](int v) { return g.degree(v) == 1 ? EndKind::Leaf : EndKind::Branch; };
  for (int u = 0; u < g.order(); ++u) {
    if (g.degree(u) == 2 || g.degree(u) == 0) continue;
    for (int x : g.neighbors(u)) {
      std::vector<int> seq{u};
      int prev = u, cur = x;
      while (g.degree(cur) == 2) {
        seq.push_back(cur);
        const auto& nb = g.neighbors(cur);
        int nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      seq.push_back(cur);
      int w = cur;
      bool keep;
      if (u != w) {
        keep = u < w;
      } else {
        keep = seq[1] < seq[seq.size() - 2];
      }
      if (keep) out.paths.push_back({std::move(seq), kind(u), kind(w)});
    }
  }
  for (const auto& comp : components(g)) {
    if (!is_cycle_component(g, comp)) continue;
    int s = comp.front();
    const auto& nb = g.neighbors(s);
    std::vector<int> cyc{s};
    int prev = s, cur = std::min(nb[0], nb[1]);
    while (cur != s) {
      cyc.push_back(cur);
      const auto& nc = g.neighbors(cur);
      int nxt = nc[0] == prev ? nc[1] : nc[0];
      prev = cur;
      cur = nxt;
    }
    out.cycles.push_back(std::move(cyc));
  }
  return out;
}

inline std::vector<StraightPath> straight_paths(const Graph& g) {
  auto st = straight_structure(g);
  if (!st.cycles.empty())
    throw Error(ErrorCode::CycleComponent,
                "component containing vertex " + std::to_string(st.cycles.front().front() + 1) +
                    " is a cycle of degree-2 vertices");
  return std::move(st.paths);
}

struct SmoothResult {
  Graph graph;
  std::vector<int> old_to_new;  // -1 for suppressed vertices
  std::vector<int> new_to_old;
};

// Suppresses every degree-2 vertex not in `keep`.
inline SmoothResult smooth(const Graph& g, const std::vector<int>& keep) {
  std::vector<char> kept(g.order(), 1);
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) == 2) kept[v] = 0;
  for (int s : keep) {
    if (s < 0 || s >= g.order() || g.degree(s) != 2)
      throw Error(ErrorCode::InvalidArgument,
                  "vertex " + std::to_string(s + 1) + " is not a degree-2 vertex");
    kept[s] = 1;
  }
  SmoothResult r;
  r.old_to_new.assign(g.order(), -1);
  for (int v = 0; v < g.order(); ++v) {
    if (kept[v]) {
      r.old_to_new[v] = static_cast<int>(r.new_to_old.size());
      r.new_to_old.push_back(v);
    }
  }
  r.graph = Graph(static_cast<int>(r.new_to_old.size()));
  std::vector<char> seen(g.order(), 0);
  for (int u = 0; u < g.order(); ++u) {
    if (!kept[u]) continue;
    for (int x : g.neighbors(u)) {
      int prev = u, cur = x;
      while (!kept[cur]) {
        seen[cur] = 1;
        const auto& nb = g.neighbors(cur);
        int nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      if (cur == u)
        throw Error(ErrorCode::MultiEdgeCollapse,
                    "smoothing creates a loop at vertex " + std::to_string(u + 1));
      if (u < cur) {
        int a = r.old_to_new[u], b = r.old_to_new[cur];
        if (r.graph.has_edge(a, b))
          throw Error(ErrorCode::MultiEdgeCollapse, "smoothing creates parallel edges between " +
                                                        std::to_string(u + 1) + " and " +
                                                        std::to_string(cur + 1));
        r.graph.add_edge(a, b);
      }
    }
  }
  for (int v = 0; v < g.order(); ++v)
    if (!kept[v] && !seen[v])
      throw Error(ErrorCode::MultiEdgeCollapse,
                  "smoothing collapses the cycle through vertex " + std::to_string(v + 1));
  return r;
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline bool is_linear_forest(const Graph& g, const std::vector<int>& w) {
  std::vector<char> in(g.order(), 0);
  for (int v : w) {
    if (v < 0 || v >= g.order()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
    in[v] = 1;
  }
  DisjointSets ds(g.order());
  for (int v : w) {
    int deg = 0;
    for (int x : g.neighbors(v)) {
      if (!in[x]) continue;
      if (++deg > 2) return false;
      if (v < x && !ds.unite(v, x)) return false;
    }
  }
  return true;
}

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;

inline BoostGraph to_boost(const Graph& g) {
  BoostGraph bg(g.order());
  int idx = 0;
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, idx++, bg);
  return bg;
}

}  // namespace detail

inline bool is_planar(const Graph& g) {
  int n = g.order(), m = g.size();
  if (n >= 3 && m > 3 * n - 6) return false;
  if (n <= 4) return true;
  auto bg = detail::to_boost(g);
  return boost::boyer_myrvold_planarity_test(bg);
}

// Clockwise-or-counterclockwise rotation system of a planar embedding, or none.
inline std::optional<std::vector<std::vector<int>>> planar_rotation(const Graph& g) {
  auto bg = detail::to_boost(g);
  using EdgeDesc = boost::graph_traits<detail::BoostGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> emb(g.order());
  auto pm = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg));
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                           boost::boyer_myrvold_params::embedding = pm))
    return std::nullopt;
  std::vector<std::vector<int>> rot(g.order());
  for (int v = 0; v < g.order(); ++v) {
    for (const auto& e : emb[v]) {
      int a = static_cast<int>(boost::source(e, bg)), b = static_cast<int>(boost::target(e, bg));
      rot[v].push_back(a == v ? b : a);
    }
  }
  return rot;
}

// Checks that `rot` lists each vertex's neighbours exactly once and that the
// faces it traces satisfy Euler's formula for every component.
inline bool is_planar_rotation(const Graph& g, const std::vector<std::vector<int>>& rot) {
  if (static_cast<int>(rot.size()) != g.order()) return false;
  std::vector<std::vector<int>> pos(g.order());
  for (int v = 0; v < g.order(); ++v) {
    auto sorted = rot[v];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != g.neighbors(v)) return false;
  }
  auto index_of = [&](int v, int w) {
    const auto& r = rot[v];
    return static_cast<int>(std::find(r.begin(), r.end(), w) - r.begin());
  };
  // darts (v -> w) indexed by position of w in rot[v]
  std::vector<std::vector<char>> used(g.order());
  for (int v = 0; v < g.order(); ++v) used[v].assign(rot[v].size(), 0);
  long long faces = 0;
  for (int v = 0; v < g.order(); ++v) {
    for (size_t i = 0; i < rot[v].size(); ++i) {
      if (used[v][i]) continue;
      ++faces;
      int a = v;
      int ai = static_cast<int>(i);
      while (!used[a][ai]) {
        used[a][ai] = 1;
        int b = rot[a][ai];
        int bi = index_of(b, a);
        int next = (bi + 1) % static_cast<int>(rot[b].size());
        a = b;
        ai = next;
      }
    }
  }
  long long n = 0, c = 0;
  for (const auto& comp : components(g)) {
    if (comp.size() == 1 && g.degree(comp[0]) == 0) continue;
    n += static_cast<long long>(comp.size());
    ++c;
  }
  if (c == 0) return true;
  return n - g.size() + faces == 2 * c;
}

}  // namespace affcover
