#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/graph.hpp"
#include "affcover/graph_io.hpp"

namespace affcover {

struct FactorizedGraph {
  Graph graph;
  std::vector<std::vector<int>> factors;

  int k() const { return static_cast<int>(factors.size()); }
};

enum class VertexKind { Crossing, Tail, Subdivision };

struct TemplateGraph {
  FactorizedGraph fg;
  std::vector<VertexKind> kind;

  const Graph& graph() const { return fg.graph; }
  const std::vector<std::vector<int>>& factors() const { return fg.factors; }
  int k() const { return fg.k(); }
};

// For each vertex, the sorted list of factor indices whose path contains it.
inline std::vector<std::vector<int>> factor_labels(const FactorizedGraph& f) {
  std::vector<std::vector<int>> lab(f.graph.order());
  for (int i = 0; i < f.k(); ++i)
    for (int v : f.factors[i])
      if (v >= 0 && v < f.graph.order() && (lab[v].empty() || lab[v].back() != i)) lab[v].push_back(i);
  return lab;
}

// Empty string when `f` is a valid path factorization; otherwise the reason.
inline std::string factorization_problem(const FactorizedGraph& f) {
  const Graph& g = f.graph;
  std::set<Edge> covered;
  for (int i = 0; i < f.k(); ++i) {
    const auto& p = f.factors[i];
    std::string fid = "factor " + std::to_string(i + 1);
    if (p.size() < 2) return fid + " has fewer than two vertices";
    std::set<int> seen;
    for (int v : p) {
      if (v < 0 || v >= g.order()) return fid + " has a vertex out of range";
      if (!seen.insert(v).second) return fid + " repeats vertex " + std::to_string(v + 1);
    }
    for (size_t t = 0; t + 1 < p.size(); ++t) {
      if (!g.has_edge(p[t], p[t + 1]))
        return fid + " uses non-edge " + std::to_string(p[t] + 1) + "-" + std::to_string(p[t + 1] + 1);
      if (!covered.insert(Edge(p[t], p[t + 1])).second)
        return "edge " + std::to_string(p[t] + 1) + "-" + std::to_string(p[t + 1] + 1) +
               " lies on two factors";
    }
  }
  if (static_cast<int>(covered.size()) != g.size()) return "factors do not cover every edge";
  for (int i = 0; i < f.k(); ++i) {
    std::set<int> a(f.factors[i].begin(), f.factors[i].end());
    for (int j = i + 1; j < f.k(); ++j) {
      int common = 0;
      for (int v : f.factors[j]) common += static_cast<int>(a.count(v));
      if (common > 1)
        return "factors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
               " share more than one vertex";
    }
  }
  return {};
}

inline bool is_pretemplate(const FactorizedGraph& f, std::string* why = nullptr) {
  auto set_why = [&](std::string s) {
    if (why) *why = std::move(s);
    return false;
  };
  if (f.k() < 2) return set_why("fewer than two factors");
  if (auto p = factorization_problem(f); !p.empty()) return set_why(p);
  const Graph& g = f.graph;
  auto lab = factor_labels(f);
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) return set_why("isolated vertex " + std::to_string(v + 1));
    if (g.degree(v) == 2) return set_why("degree-2 vertex " + std::to_string(v + 1));
  }
  for (int i = 0; i < f.k(); ++i) {
    const auto& p = f.factors[i];
    if (g.degree(p.front()) != 1 || g.degree(p.back()) != 1)
      return set_why("factor " + std::to_string(i + 1) + " does not end in degree-1 vertices");
    if (p.size() < 3) return set_why("factor " + std::to_string(i + 1) + " is an isolated edge");
    for (size_t t = 1; t + 1 < p.size(); ++t)
      if (lab[p[t]].size() < 2)
        return set_why("interior vertex " + std::to_string(p[t] + 1) + " lies on a single factor");
  }
  return true;
}

inline void validate_template(const TemplateGraph& t) {
  auto bad = [](const std::string& s) { return Error(ErrorCode::InvalidTemplate, s); };
  if (t.k() < 2) throw bad("a template needs at least two factors");
  if (auto p = factorization_problem(t.fg); !p.empty()) throw bad(p);
  const Graph& g = t.graph();
  if (static_cast<int>(t.kind.size()) != g.order()) throw bad("marker count differs from vertex count");
  auto lab = factor_labels(t.fg);
  for (int v = 0; v < g.order(); ++v) {
    if (lab[v].empty()) throw bad("vertex " + std::to_string(v + 1) + " lies on no factor");
    bool ok = false;
    switch (t.kind[v]) {
      case VertexKind::Tail: ok = g.degree(v) == 1; break;
      case VertexKind::Crossing: ok = lab[v].size() >= 2; break;
      case VertexKind::Subdivision: ok = g.degree(v) == 2 && lab[v].size() == 1; break;
    }
    if (!ok) throw bad("vertex " + std::to_string(v + 1) + " has an inconsistent marker");
  }
  for (int i = 0; i < t.k(); ++i) {
    const auto& p = t.factors()[i];
    std::string fid = "factor " + std::to_string(i + 1);
    if (p.size() < 3 || t.kind[p.front()] != VertexKind::Tail || t.kind[p.back()] != VertexKind::Tail)
      throw bad(fid + " must run from tail to tail through a crossing");
    // tail C (S S C)* tail
    size_t pos = 1;
    if (t.kind[p[pos]] != VertexKind::Crossing) throw bad(fid + " must start with a crossing");
    ++pos;
    while (pos + 1 < p.size()) {
      if (pos + 3 >= p.size() || t.kind[p[pos]] != VertexKind::Subdivision ||
          t.kind[p[pos + 1]] != VertexKind::Subdivision || t.kind[p[pos + 2]] != VertexKind::Crossing)
        throw bad(fid + " needs exactly two subdivision vertices between consecutive crossings");
      pos += 3;
    }
  }
}

// Markers derived from structure: degree-1 vertices are tails, vertices on two
// or more factors are crossings, the rest are subdivisions.
inline TemplateGraph template_from_factorized(FactorizedGraph f) {
  TemplateGraph t;
  auto lab = factor_labels(f);
  t.kind.resize(f.graph.order());
  for (int v = 0; v < f.graph.order(); ++v) {
    if (f.graph.degree(v) == 1)
      t.kind[v] = VertexKind::Tail;
    else if (lab[v].size() >= 2)
      t.kind[v] = VertexKind::Crossing;
    else
      t.kind[v] = VertexKind::Subdivision;
  }
  t.fg = std::move(f);
  return t;
}

// Canonical code of a factorized graph: the least label-sequence encoding over
// all factor relabelings and factor reversals. Equal codes <=> isomorphic as
// factorized graphs (for factorizations whose factors pairwise share <= 1 vertex).
using CanonicalCode = std::vector<int>;

inline CanonicalCode canonical_code(const FactorizedGraph& f) {
  int k = f.k();
  auto lab = factor_labels(f);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalCode best;
  bool have = false;
  std::vector<std::vector<int>> per_factor(k);
  do {
    for (int i = 0; i < k; ++i) {
      std::vector<int> fwd;
      for (int v : f.factors[i]) {
        std::vector<int> l;
        for (int x : lab[v]) l.push_back(perm[x]);
        std::sort(l.begin(), l.end());
        fwd.insert(fwd.end(), l.begin(), l.end());
        fwd.push_back(-1);
      }
      std::vector<int> rev;
      for (auto it = f.factors[i].rbegin(); it != f.factors[i].rend(); ++it) {
        std::vector<int> l;
        for (int x : lab[*it]) l.push_back(perm[x]);
        std::sort(l.begin(), l.end());
        rev.insert(rev.end(), l.begin(), l.end());
        rev.push_back(-1);
      }
      per_factor[perm[i]] = std::min(fwd, rev);
    }
    CanonicalCode code;
    for (int i = 0; i < k; ++i) {
      code.insert(code.end(), per_factor[i].begin(), per_factor[i].end());
      code.push_back(-2);
    }
    if (!have || code < best) {
      best = std::move(code);
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Rebuilds a factorized graph from a label-sequence code.
inline FactorizedGraph from_code(const CanonicalCode& code) {
  std::vector<std::vector<std::vector<int>>> seqs(1);
  std::vector<int> cur;
  for (int x : code) {
    if (x == -2) {
      seqs.emplace_back();
    } else if (x == -1) {
      seqs.back().push_back(cur);
      cur.clear();
    } else {
      cur.push_back(x);
    }
  }
  seqs.pop_back();
  FactorizedGraph f;
  std::map<std::vector<int>, int> junction;
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  for (const auto& s : seqs) {
    std::vector<int> path;
    for (const auto& l : s) {
      int id;
      if (l.size() >= 2) {
        auto [it, fresh] = junction.emplace(l, n);
        id = it->second;
        if (fresh) ++n;
      } else {
        id = n++;
      }
      path.push_back(id);
    }
    for (size_t t = 0; t + 1 < path.size(); ++t) edges.emplace_back(path[t], path[t + 1]);
    f.factors.push_back(std::move(path));
  }
  f.graph = Graph::from_edges(n, edges);
  return f;
}

inline FactorizedGraph parse_factorized(std::string_view text) {
  std::vector<std::pair<int, std::vector<long long>>> raw;
  Graph g = parse_graph_with(text, [&](int ln, const std::vector<std::string_view>& t, bool have_header) {
    if (t[0] != "f") return false;
    if (!have_header) io::fail(ln, "factor before header");
    if (t.size() < 4) io::fail(ln, "factor must be 'f <id> <v1> <v2> ...'");
    long long id = io::parse_int(t[1], ln);
    std::vector<long long> vs;
    for (size_t i = 2; i < t.size(); ++i) vs.push_back(io::parse_int(t[i], ln));
    raw.emplace_back(static_cast<int>(id), std::move(vs));
    return true;
  });
  FactorizedGraph f;
  f.graph = std::move(g);
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].first != static_cast<int>(i) + 1)
      throw Error(ErrorCode::ParseError, "factor ids must be 1.." + std::to_string(raw.size()));
    std::vector<int> p;
    for (long long v : raw[i].second) {
      if (v < 1 || v > f.graph.order()) throw Error(ErrorCode::ParseError, "factor vertex out of range");
      p.push_back(static_cast<int>(v - 1));
    }
    f.factors.push_back(std::move(p));
  }
  return f;
}

inline std::string write_factorized(const FactorizedGraph& f) {
  std::ostringstream os;
  os << write_graph(f.graph);
  for (int i = 0; i < f.k(); ++i) {
    os << "f " << i + 1;
    for (int v : f.factors[i]) os << ' ' << v + 1;
    os << '\n';
  }
  return os.str();
}

}  // namespace affcover
