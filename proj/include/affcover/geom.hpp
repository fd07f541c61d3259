#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "affcover/description.hpp"
#include "affcover/error.hpp"
#include "affcover/factorized.hpp"
#include "affcover/graph.hpp"
#include "affcover/scalar.hpp"

namespace affcover {

template <class S>
struct Point {
  std::vector<S> c;

  Point() = default;
  Point(std::initializer_list<S> xs) : c(xs) {}
  explicit Point(std::vector<S> xs) : c(std::move(xs)) {}

  int dim() const { return static_cast<int>(c.size()); }
  const S& operator[](int i) const { return c[i]; }
  S& operator[](int i) { return c[i]; }
  friend bool operator==(const Point& a, const Point& b) { return a.c == b.c; }
  friend bool operator<(const Point& a, const Point& b) {
    for (int i = 0; i < a.dim(); ++i) {
      if (a.c[i] < b.c[i]) return true;
      if (b.c[i] < a.c[i]) return false;
    }
    return false;
  }
};

template <class S>
Point<S> operator-(const Point<S>& a, const Point<S>& b) {
  Point<S> r = a;
  for (int i = 0; i < a.dim(); ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

template <class S>
Point<S> operator+(const Point<S>& a, const Point<S>& b) {
  Point<S> r = a;
  for (int i = 0; i < a.dim(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

template <class S>
Point<S> operator*(const S& t, const Point<S>& a) {
  Point<S> r = a;
  for (auto& x : r.c) x = t * x;
  return r;
}

template <class S>
S dot(const Point<S>& a, const Point<S>& b) {
  S s = 0;
  for (int i = 0; i < a.dim(); ++i) s = s + a.c[i] * b.c[i];
  return s;
}

template <class S>
Point<S> cross(const Point<S>& a, const Point<S>& b) {
  return Point<S>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class S>
bool is_zero(const Point<S>& a) {
  return std::all_of(a.c.begin(), a.c.end(), [](const S& x) { return sign(x) == 0; });
}

// chi(a,b,c): determinant of the rows (x_i, y_i, 1).
template <class S>
S chi(const Point<S>& a, const Point<S>& b, const Point<S>& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

template <class S>
int orient3(const Point<S>& a, const Point<S>& b, const Point<S>& c) {
  return sign(chi(a, b, c));
}

template <class S>
bool collinear(const Point<S>& a, const Point<S>& b, const Point<S>& c) {
  if (a.dim() == 2) return sign(chi(a, b, c)) == 0;
  return is_zero(cross(b - a, c - a));
}

// B(a,b,c): a lies on the closed segment bc.
template <class S>
bool on_segment(const Point<S>& a, const Point<S>& b, const Point<S>& c) {
  if (!collinear(a, b, c)) return false;
  auto ba = b - a, ca = c - a, cb = c - b;
  S bc2 = dot(cb, cb);
  return sign(dot(ba, ba) - bc2) <= 0 && sign(dot(ca, ca) - bc2) <= 0;
}

// D(a,b,c,d): closed segments ab and cd are disjoint.
template <class S>
bool segments_disjoint(const Point<S>& a, const Point<S>& b, const Point<S>& c, const Point<S>& d) {
  auto collinear_clause = [&] {
    return !on_segment(a, c, d) && !on_segment(b, c, d) && !on_segment(c, a, b) && !on_segment(d, a, b);
  };
  if (a.dim() == 2) {
    S c1 = chi(a, b, c), c2 = chi(a, b, d);
    if (sign(c1 * c2) > 0) return true;
    if (sign(chi(c, d, a) * chi(c, d, b)) > 0) return true;
    return sign(c1) == 0 && sign(c2) == 0 && collinear_clause();
  }
  auto u = b - a;
  auto n1 = cross(u, c - a), n2 = cross(u, d - a);
  if (sign(dot(n1, d - a)) != 0) return true;  // not coplanar
  if (sign(dot(n1, n2)) > 0) return true;
  auto w = d - c;
  if (sign(dot(cross(w, a - c), cross(w, b - c))) > 0) return true;
  return is_zero(n1) && is_zero(n2) && collinear_clause();
}

template <class S>
struct Line {
  Point<S> p;
  Point<S> q;
};

template <class S>
struct Realization {
  int dim = 2;
  std::vector<Point<S>> positions;
  std::vector<Line<S>> lines;
  std::map<Edge, int> assignment;
};

struct CoverReport {
  bool valid = true;
  std::vector<std::string> violations;

  void add(std::string s) {
    valid = false;
    violations.push_back(std::move(s));
  }
};

namespace detail {

inline std::string vname(int v) { return std::to_string(v + 1); }
inline std::string ename(const Edge& e) { return vname(e.u) + "-" + vname(e.v); }

template <class S>
bool boxes_overlap(const Point<S>& a, const Point<S>& b, const Point<S>& c, const Point<S>& d) {
  for (int i = 0; i < a.dim(); ++i) {
    const S& lo1 = a[i] < b[i] ? a[i] : b[i];
    const S& hi1 = a[i] < b[i] ? b[i] : a[i];
    const S& lo2 = c[i] < d[i] ? c[i] : d[i];
    const S& hi2 = c[i] < d[i] ? d[i] : c[i];
    if (hi1 < lo2 || hi2 < lo1) return false;
  }
  return true;
}

}  // namespace detail

template <class S>
CoverReport verify_cover(const Graph& g, const Realization<S>& r) {
  CoverReport rep;
  if (r.dim != 2 && r.dim != 3) {
    rep.add("dimension must be 2 or 3");
    return rep;
  }
  if (static_cast<int>(r.positions.size()) != g.order()) {
    rep.add("realization places " + std::to_string(r.positions.size()) + " vertices, graph has " +
            std::to_string(g.order()));
    return rep;
  }
  for (int v = 0; v < g.order(); ++v)
    if (r.positions[v].dim() != r.dim) {
      rep.add("vertex " + detail::vname(v) + " has wrong dimension");
      return rep;
    }
  for (size_t i = 0; i < r.lines.size(); ++i) {
    if (r.lines[i].p.dim() != r.dim || r.lines[i].q.dim() != r.dim) {
      rep.add("line " + std::to_string(i + 1) + " has wrong dimension");
      return rep;
    }
    if (r.lines[i].p == r.lines[i].q) rep.add("line " + std::to_string(i + 1) + " has coincident spanning points");
  }
  if (!rep.valid) return rep;

  // (i) distinct positions
  std::vector<int> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return r.positions[a] < r.positions[b]; });
  for (size_t i = 1; i < order.size(); ++i)
    if (r.positions[order[i - 1]] == r.positions[order[i]])
      rep.add("vertices " + detail::vname(std::min(order[i - 1], order[i])) + " and " +
              detail::vname(std::max(order[i - 1], order[i])) + " coincide");

  // (ii) every edge on its line
  for (const auto& e : g.edges()) {
    auto it = r.assignment.find(e);
    if (it == r.assignment.end() || it->second < 0 || it->second >= static_cast<int>(r.lines.size())) {
      rep.add("edge " + detail::ename(e) + " has no line");
      continue;
    }
    const auto& l = r.lines[it->second];
    if (!on_segment(r.positions[e.u], l.p, l.q) || !on_segment(r.positions[e.v], l.p, l.q))
      rep.add("edge " + detail::ename(e) + " is not on line " + std::to_string(it->second + 1));
  }

  // (iii) and (iv) non-crossing
  const auto& es = g.edges();
  for (size_t i = 0; i < es.size(); ++i) {
    for (size_t j = i + 1; j < es.size(); ++j) {
      const Edge& e = es[i];
      const Edge& f = es[j];
      const auto &a = r.positions[e.u], &b = r.positions[e.v];
      const auto &c = r.positions[f.u], &d = r.positions[f.v];
      if (!detail::boxes_overlap(a, b, c, d)) continue;
      int shared = -1;
      if (e.touches(f.u)) shared = f.u;
      if (e.touches(f.v)) shared = f.v;
      if (shared < 0) {
        if (!segments_disjoint(a, b, c, d))
          rep.add("edges " + detail::ename(e) + " and " + detail::ename(f) + " intersect");
      } else {
        const auto& pi = r.positions[e.other(shared)];
        const auto& pj = r.positions[shared];
        const auto& pm = r.positions[f.other(shared)];
        if (on_segment(pm, pi, pj) || on_segment(pi, pj, pm))
          rep.add("edges " + detail::ename(e) + " and " + detail::ename(f) + " overlap");
      }
    }
  }
  return rep;
}

// Reads off, for each line, the maximal runs of its edges in order along the line.
template <class S>
CombinatorialDescription trace_description(const Graph& g, const Realization<S>& r) {
  CombinatorialDescription d;
  d.lines.resize(r.lines.size());
  std::vector<std::vector<Edge>> by_line(r.lines.size());
  for (const auto& [e, li] : r.assignment)
    if (g.has_edge(e.u, e.v) && li >= 0 && li < static_cast<int>(r.lines.size())) by_line[li].push_back(e);
  for (size_t li = 0; li < r.lines.size(); ++li) {
    const auto& l = r.lines[li];
    auto dir = l.q - l.p;
    std::vector<int> vs;
    for (const auto& e : by_line[li]) {
      vs.push_back(e.u);
      vs.push_back(e.v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<S> key(g.order());
    for (int v : vs) key[v] = dot(r.positions[v] - l.p, dir);
    std::sort(vs.begin(), vs.end(), [&](int a, int b) { return key[a] < key[b]; });
    std::set<Edge> on(by_line[li].begin(), by_line[li].end());
    std::vector<int> cur;
    for (size_t t = 0; t < vs.size(); ++t) {
      if (!cur.empty() && !on.count(Edge(cur.back(), vs[t]))) {
        if (cur.size() >= 2) d.lines[li].push_back(cur);
        cur.clear();
      }
      cur.push_back(vs[t]);
    }
    if (cur.size() >= 2) d.lines[li].push_back(cur);
  }
  return d;
}

template <class S>
std::optional<Point<S>> line_intersection(const Line<S>& l1, const Line<S>& l2) {
  auto d1 = l1.q - l1.p, d2 = l2.q - l2.p, w = l2.p - l1.p;
  if (l1.p.dim() == 2) {
    S den = d1[0] * d2[1] - d1[1] * d2[0];
    if (sign(den) == 0) return std::nullopt;
    S t = (w[0] * d2[1] - w[1] * d2[0]) / den;
    return l1.p + t * d1;
  }
  auto n = cross(d1, d2);
  if (is_zero(n)) return std::nullopt;
  if (sign(dot(w, n)) != 0) return std::nullopt;
  S t = dot(cross(w, d2), n) / dot(n, n);
  return l1.p + t * d1;
}

template <class S>
bool same_line(const Line<S>& a, const Line<S>& b) {
  return collinear(a.p, a.q, b.p) && collinear(a.p, a.q, b.q);
}

struct Arrangement {
  Graph graph;
  std::vector<Point<Rational>> points;
  std::vector<std::pair<int, int>> line_pair;  // the two lines crossing at each vertex
};

inline Arrangement arrangement_graph(const std::vector<Line<Rational>>& lines) {
  Arrangement a;
  int l = static_cast<int>(lines.size());
  for (const auto& ln : lines)
    if (ln.p.dim() != 2 || ln.p == ln.q) throw Error(ErrorCode::InvalidArgument, "lines must be 2D with p != q");
  std::map<Point<Rational>, int> at;
  std::vector<std::vector<int>> on(l);
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) {
      auto x = line_intersection(lines[i], lines[j]);
      if (!x)
        throw Error(ErrorCode::NotSimple,
                    "lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not cross");
      if (at.count(*x)) throw Error(ErrorCode::NotSimple, "three lines share a common point");
      int id = static_cast<int>(a.points.size());
      at.emplace(*x, id);
      a.points.push_back(*x);
      a.line_pair.emplace_back(i, j);
      on[i].push_back(id);
      on[j].push_back(id);
    }
  }
  a.graph = Graph(static_cast<int>(a.points.size()));
  for (int i = 0; i < l; ++i) {
    auto dir = lines[i].q - lines[i].p;
    auto& vs = on[i];
    std::sort(vs.begin(), vs.end(), [&](int x, int y) {
      return dot(a.points[x] - lines[i].p, dir) < dot(a.points[y] - lines[i].p, dir);
    });
    for (size_t t = 0; t + 1 < vs.size(); ++t) a.graph.add_edge(vs[t], vs[t + 1]);
  }
  return a;
}

struct AugmentedArrangement {
  TemplateGraph templ;
  Realization<Rational> realization;  // exact drawing on the generating lines
};

inline AugmentedArrangement augmented_arrangement_graph(const std::vector<Line<Rational>>& lines, int d) {
  if (d != 2 && d != 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 2 or 3");
  int l = static_cast<int>(lines.size());
  for (const auto& ln : lines)
    if (ln.p.dim() != d || ln.q.dim() != d || ln.p == ln.q)
      throw Error(ErrorCode::InvalidArgument, "lines must have dimension d and p != q");
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      if (same_line(lines[i], lines[j]))
        throw Error(ErrorCode::NotSimple, "lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
  std::vector<Point<Rational>> pts;
  std::map<Point<Rational>, int> at;
  std::vector<std::vector<int>> on(l);
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) {
      auto x = line_intersection(lines[i], lines[j]);
      if (!x) continue;
      auto [it, fresh] = at.emplace(*x, static_cast<int>(pts.size()));
      if (fresh) pts.push_back(*x);
      for (int li : {i, j})
        if (std::find(on[li].begin(), on[li].end(), it->second) == on[li].end()) on[li].push_back(it->second);
    }
  }
  for (int i = 0; i < l; ++i)
    if (on[i].empty()) throw Error(ErrorCode::IsolatedLine, "line " + std::to_string(i + 1) + " is never crossed");
  std::vector<std::vector<int>> factors(l);
  std::vector<VertexKind> kind(pts.size(), VertexKind::Crossing);
  std::vector<std::pair<int, int>> edges;
  auto add_vertex = [&](Point<Rational> p, VertexKind k) {
    pts.push_back(std::move(p));
    kind.push_back(k);
    return static_cast<int>(pts.size()) - 1;
  };
  for (int i = 0; i < l; ++i) {
    auto dir = lines[i].q - lines[i].p;
    auto& vs = on[i];
    std::sort(vs.begin(), vs.end(), [&](int x, int y) {
      return dot(pts[x] - lines[i].p, dir) < dot(pts[y] - lines[i].p, dir);
    });
    Point<Rational> step = vs.size() >= 2 ? pts[vs.back()] - pts[vs.front()] : dir;
    auto& f = factors[i];
    f.push_back(add_vertex(pts[vs.front()] - step, VertexKind::Tail));
    for (size_t t = 0; t < vs.size(); ++t) {
      if (t > 0) {
        Point<Rational> a = pts[vs[t - 1]], b = pts[vs[t]];
        f.push_back(add_vertex(a + Rational(1, 3) * (b - a), VertexKind::Subdivision));
        f.push_back(add_vertex(a + Rational(2, 3) * (b - a), VertexKind::Subdivision));
      }
      f.push_back(vs[t]);
    }
    f.push_back(add_vertex(pts[vs.back()] + step, VertexKind::Tail));
    for (size_t t = 0; t + 1 < f.size(); ++t) edges.emplace_back(f[t], f[t + 1]);
  }
  AugmentedArrangement out;
  out.templ.fg.graph = Graph::from_edges(static_cast<int>(pts.size()), edges);
  out.templ.fg.factors = factors;
  out.templ.kind = kind;
  auto& r = out.realization;
  r.dim = d;
  r.positions = pts;
  for (int i = 0; i < l; ++i) {
    r.lines.push_back({pts[factors[i].front()], pts[factors[i].back()]});
    for (size_t t = 0; t + 1 < factors[i].size(); ++t) r.assignment[Edge(factors[i][t], factors[i][t + 1])] = i;
  }
  return out;
}

// Re-spans every line by the extreme vertices assigned to it, so that the
// segment condition of verify_cover only depends on the drawing itself.
template <class S>
void respan_lines(const Graph& g, Realization<S>& r) {
  std::vector<std::vector<int>> on(r.lines.size());
  for (const auto& [e, li] : r.assignment) {
    if (!g.has_edge(e.u, e.v)) continue;
    on[li].push_back(e.u);
    on[li].push_back(e.v);
  }
  for (size_t li = 0; li < r.lines.size(); ++li) {
    if (on[li].empty()) continue;
    auto& l = r.lines[li];
    auto dir = l.q - l.p;
    auto key = [&](int v) { return dot(r.positions[v] - l.p, dir); };
    int lo = on[li][0], hi = on[li][0];
    for (int v : on[li]) {
      if (key(v) < key(lo)) lo = v;
      if (key(hi) < key(v)) hi = v;
    }
    if (lo != hi) l = {r.positions[lo], r.positions[hi]};
  }
}

}  // namespace affcover
