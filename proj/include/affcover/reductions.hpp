#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/geom.hpp"
#include "affcover/graph.hpp"
#include "affcover/graph_io.hpp"
#include "affcover/scalar.hpp"

namespace affcover {

// ---------------------------------------------------------------------------
// Arrangement graphs with tails

inline Graph add_tails(const Graph& g) {
  Graph out = g;
  for (int v = 0; v < g.order(); ++v) {
    int d = g.degree(v);
    if (d < 2 || d > 4)
      throw Error(ErrorCode::BadDegrees,
                  "vertex " + std::to_string(v + 1) + " has degree " + std::to_string(d) + ", expected 2..4");
    for (int t = d; t < 4; ++t) out.add_edge(v, out.add_vertex());
  }
  return out;
}

// The l with l(l-1)/2 vertices and l(l-2) edges, if degrees are within 2..4.
inline std::optional<int> check_arrangement_counts(const Graph& g) {
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) < 2 || g.degree(v) > 4) return std::nullopt;
  long long n = g.order(), m = g.size();
  for (long long l = 3; l * (l - 1) / 2 <= n; ++l)
    if (l * (l - 1) / 2 == n && l * (l - 2) == m) return static_cast<int>(l);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The Perles graph

struct PerlesGraph {
  Graph g;
  std::vector<std::string> names;
  Realization<QSqrt5> realization;              // on 10 lines
  std::vector<int> configuration;               // the nine Perles points
  std::vector<std::array<int, 3>> triples;      // their collinear triples
};

// Vertex 0 is the big vertex b, 1..10 the medium cycle m1..m10, 11..15 the
// small vertices s1..s5 with s_i adjacent to m_{2i-1}, m_{2i}, m_{2i+1}.
// Corners m_{2i-1} span an affine-regular pentagon, m_{2i} are side midpoints,
// s_i are the pentagram tips.
inline PerlesGraph perles_graph() {
  using P = Point<QSqrt5>;
  const QSqrt5 c1(Rational(-1, 4), Rational(1, 4));  // cos 72
  const QSqrt5 c2(Rational(-1, 4), Rational(-1, 4)); // cos 144
  const QSqrt5 h(Rational(-1, 2), Rational(1, 2));   // sin 144 / sin 72
  std::array<P, 5> corner{P{QSqrt5(1), QSqrt5(0)}, P{c1, QSqrt5(1)}, P{c2, h}, P{c2, -h}, P{c1, QSqrt5(-1)}};
  auto mid = [](const P& a, const P& b) { return QSqrt5(Rational(1, 2)) * (a + b); };

  PerlesGraph out;
  out.g = Graph(16);
  auto& r = out.realization;
  r.dim = 2;
  r.positions.assign(16, P{});
  r.positions[0] = P{QSqrt5(0), QSqrt5(0)};
  out.names.assign(16, "");
  out.names[0] = "b";
  for (int i = 0; i < 5; ++i) {
    r.positions[1 + 2 * i] = corner[i];
    r.positions[2 + 2 * i] = mid(corner[i], corner[(i + 1) % 5]);
  }
  for (int j = 1; j <= 10; ++j) out.names[j] = "m" + std::to_string(j);
  std::vector<Line<QSqrt5>> sides, axes;
  for (int i = 0; i < 5; ++i) sides.push_back({corner[i], corner[(i + 1) % 5]});
  for (int i = 1; i <= 5; ++i) {
    // tip beyond the side m_{2i-1} m_{2i+1}
    auto tip = line_intersection(sides[(i + 3) % 5], sides[i % 5]);
    if (!tip) throw Error(ErrorCode::InvalidArgument, "degenerate pentagon");
    r.positions[10 + i] = *tip;
    out.names[10 + i] = "s" + std::to_string(i);
    axes.push_back({r.positions[0], r.positions[2 * i]});
  }
  auto m = [](int j) { return 1 + (j - 1 + 10) % 10; };
  for (int j = 1; j <= 10; ++j) {
    out.g.add_edge(0, j);
    out.g.add_edge(j, m(j + 1));
  }
  for (int i = 1; i <= 5; ++i)
    for (int j : {2 * i - 1, 2 * i, 2 * i + 1}) out.g.add_edge(10 + i, m(j));

  r.lines = sides;
  r.lines.insert(r.lines.end(), axes.begin(), axes.end());
  for (const auto& e : out.g.edges())
    for (size_t li = 0; li < r.lines.size(); ++li)
      if (collinear(r.positions[e.u], r.lines[li].p, r.lines[li].q) &&
          collinear(r.positions[e.v], r.lines[li].p, r.lines[li].q)) {
        r.assignment[e] = static_cast<int>(li);
        break;
      }
  respan_lines(out.g, r);

  // Perles: the five side lines and four of the five axes; the points are the
  // tips s1..s4, b, and the corners opposite those tips.
  out.configuration = {11, 12, 13, 14, 0};
  for (int i = 1; i <= 4; ++i) out.configuration.push_back(m(2 * i + 5));
  std::vector<Line<QSqrt5>> config_lines(sides.begin(), sides.end());
  config_lines.insert(config_lines.end(), axes.begin(), axes.begin() + 4);
  const auto& cf = out.configuration;
  for (size_t a = 0; a < cf.size(); ++a)
    for (size_t b = a + 1; b < cf.size(); ++b)
      for (size_t c = b + 1; c < cf.size(); ++c)
        for (const auto& l : config_lines)
          if (collinear(r.positions[cf[a]], l.p, l.q) && collinear(r.positions[cf[b]], l.p, l.q) &&
              collinear(r.positions[cf[c]], l.p, l.q)) {
            out.triples.push_back({cf[a], cf[b], cf[c]});
            break;
          }
  return out;
}

// ---------------------------------------------------------------------------
// Intersection line gadget: K_{3,4} plus the path v1 v2 v3.
// Vertices 0..2 are v1..v3, 3..6 are u1..u4.

inline Graph intersection_line_gadget() {
  Graph g(7);
  for (int v = 0; v < 3; ++v)
    for (int u = 3; u < 7; ++u) g.add_edge(v, u);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

// ---------------------------------------------------------------------------
// Planar cyclic SAT instances

// Literals are +-(variable + 1); two or three per clause.
struct ThreeSatInstance {
  std::vector<std::string> variables;
  std::vector<std::vector<int>> clauses;
  std::vector<std::vector<int>> rotation;  // of the associated graph plus cycle; empty = compute
};

// Positive clauses of three distinct variables, listed in cycle order.
struct SatInstance {
  std::vector<std::string> variables;
  std::vector<std::array<int, 3>> clauses;
  std::vector<std::vector<int>> rotation;
};

// Variables are vertices 0..n-1, clause i is vertex n+i; consecutive clauses
// are joined along the cycle (a single edge for two clauses).
inline Graph associated_cycle_graph(int nvars, const std::vector<std::vector<int>>& clause_vars) {
  int m = static_cast<int>(clause_vars.size());
  Graph g(nvars + m);
  for (int i = 0; i < m; ++i)
    for (int x : clause_vars[i])
      if (!g.has_edge(x, nvars + i)) g.add_edge(x, nvars + i);
  if (m == 2) g.add_edge(nvars, nvars + 1);
  if (m >= 3)
    for (int i = 0; i < m; ++i) g.add_edge(nvars + i, nvars + (i + 1) % m);
  return g;
}

inline Graph associated_cycle_graph(const SatInstance& s) {
  std::vector<std::vector<int>> cv;
  for (const auto& c : s.clauses) cv.push_back({c[0], c[1], c[2]});
  return associated_cycle_graph(static_cast<int>(s.variables.size()), cv);
}

namespace detail {

inline std::vector<std::vector<int>> checked_rotation(const Graph& g, const std::vector<std::vector<int>>& given) {
  if (given.empty()) {
    auto rot = planar_rotation(g);
    if (!rot) throw Error(ErrorCode::NotPlanarCyclic, "associated graph plus clause cycle is not planar");
    return *rot;
  }
  if (!is_planar_rotation(g, given))
    throw Error(ErrorCode::NotPlanarCyclic, "rotation system is not a planar embedding of the associated graph plus cycle");
  return given;
}

}  // namespace detail

inline void validate_sat_instance(const SatInstance& s) {
  int n = static_cast<int>(s.variables.size());
  for (size_t i = 0; i < s.clauses.size(); ++i) {
    const auto& c = s.clauses[i];
    for (int x : c)
      if (x < 0 || x >= n) throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(i + 1) + " uses an unknown variable");
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
      throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(i + 1) + " repeats a variable");
  }
  if (!is_planar_rotation(associated_cycle_graph(s), s.rotation))
    throw Error(ErrorCode::NotPlanarCyclic, "rotation system is not a planar embedding of the associated graph plus cycle");
}

// Positive planar cyclic 1-in-3 instance satisfiable iff phi is satisfiable.
// Each clause is replaced in place, so the cycle visits the gadgets' clauses
// in the order of the original clauses.
inline SatInstance build_one_in_three(const ThreeSatInstance& phi) {
  int n = static_cast<int>(phi.variables.size());
  std::vector<std::vector<int>> cv;
  for (size_t i = 0; i < phi.clauses.size(); ++i) {
    const auto& c = phi.clauses[i];
    if (c.size() < 2 || c.size() > 3)
      throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(i + 1) + " needs two or three literals");
    std::vector<int> vars;
    for (int lit : c) {
      int x = (lit < 0 ? -lit : lit) - 1;
      if (lit == 0 || x >= n) throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(i + 1) + " uses an unknown variable");
      for (int y : vars)
        if (y == x) throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(i + 1) + " repeats a variable");
      vars.push_back(x);
    }
    cv.push_back(vars);
  }
  detail::checked_rotation(associated_cycle_graph(n, cv), phi.rotation);

  SatInstance out;
  out.variables = phi.variables;
  auto fresh = [&](const std::string& name) {
    out.variables.push_back(name);
    return static_cast<int>(out.variables.size()) - 1;
  };
  using Block = std::vector<std::array<int, 3>>;
  auto inequality = [&](Block& into, int x, int y, const std::string& tag) {
    int a = fresh(tag + ".a"), b = fresh(tag + ".b"), c = fresh(tag + ".c"), d = fresh(tag + ".d");
    into.insert(into.end(), {{a, x, y}, {a, b, c}, {b, c, d}, {a, c, d}});
  };
  // Each clause becomes a run of the cycle. The run's direction and the side
  // on which the negation detours sit are picked so the graph stays planar.
  std::vector<Block> runs(phi.clauses.size());
  auto planar_with = [&](size_t upto) {
    std::vector<std::vector<int>> all;
    for (size_t i = 0; i < runs.size(); ++i) {
      if (i > upto) {
        all.push_back(cv[i]);
        continue;
      }
      for (const auto& c : runs[i]) all.push_back({c[0], c[1], c[2]});
    }
    return is_planar(associated_cycle_graph(static_cast<int>(out.variables.size()), all));
  };
  for (size_t i = 0; i < phi.clauses.size(); ++i) {
    std::string g = "g" + std::to_string(i + 1);
    std::vector<std::pair<int, Block>> negs;  // detour of each negated literal, keyed by its new variable
    std::vector<int> xs;
    for (size_t j = 0; j < phi.clauses[i].size(); ++j) {
      int lit = phi.clauses[i][j];
      int x = (lit < 0 ? -lit : lit) - 1;
      if (lit < 0) {
        int nx = fresh(g + ".not" + std::to_string(j + 1));
        negs.emplace_back(nx, Block{});
        inequality(negs.back().second, x, nx, g + ".neg" + std::to_string(j + 1));
        x = nx;
      }
      xs.push_back(x);
    }
    // x, y, z roles, the run's direction, and where each negation detour
    // joins the run are tried in turn
    const size_t checkpoint = out.variables.size();
    std::vector<int> roles = xs;
    std::sort(roles.begin(), roles.end());
    bool placed = false;
    do {
      const int options = 2 << (2 * negs.size());
      for (int option = 0; option < options && !placed; ++option) {
        out.variables.resize(checkpoint);
        Block main;
        if (roles.size() == 2) {
          int a = fresh(g + ".a"), b = fresh(g + ".b"), c = fresh(g + ".c");
          inequality(main, b, roles[0], g + ".ne1");
          main.push_back({a, b, c});
          inequality(main, c, roles[1], g + ".ne2");
        } else {
          int a = fresh(g + ".a"), b = fresh(g + ".b"), u = fresh(g + ".u"), q = fresh(g + ".q");
          int c = fresh(g + ".c"), d = fresh(g + ".d"), e = fresh(g + ".e"), r = fresh(g + ".r");
          main.insert(main.end(), {{a, roles[0], u}, {a, b, q}, {b, u, roles[1]}});
          inequality(main, u, e, g + ".ne1");
          inequality(main, c, e, g + ".ne2");
          main.push_back({c, d, r});
          inequality(main, d, roles[2], g + ".ne3");
        }
        if (option & 1) std::reverse(main.begin(), main.end());
        // detour j sits before or after the first clause using its variable,
        // visited in either direction
        std::vector<std::vector<Block>> before(main.size()), after(main.size());
        for (size_t j = 0; j < negs.size(); ++j) {
          int bits = option >> (1 + 2 * j);
          size_t at = 0;
          while (at < main.size() && std::find(main[at].begin(), main[at].end(), negs[j].first) == main[at].end()) ++at;
          Block detour = negs[j].second;
          if (bits & 2) std::reverse(detour.begin(), detour.end());
          ((bits & 1) ? after : before)[std::min(at, main.size() - 1)].push_back(std::move(detour));
        }
        Block run;
        for (size_t t = 0; t < main.size(); ++t) {
          for (const auto& b : before[t]) run.insert(run.end(), b.begin(), b.end());
          run.push_back(main[t]);
          for (const auto& b : after[t]) run.insert(run.end(), b.begin(), b.end());
        }
        runs[i] = std::move(run);
        placed = planar_with(i);
      }
    } while (!placed && std::next_permutation(roles.begin(), roles.end()));
    if (!placed) throw Error(ErrorCode::NotPlanarCyclic, "gadget replacement lost planarity at clause " + std::to_string(i + 1));
  }
  for (const auto& run : runs) out.clauses.insert(out.clauses.end(), run.begin(), run.end());
  auto rot = planar_rotation(associated_cycle_graph(out));
  if (!rot) throw Error(ErrorCode::NotPlanarCyclic, "gadget replacement lost planarity");
  out.rotation = std::move(*rot);
  return out;
}

// Lexicographically first assignment (true before false, variables in order)
// with exactly one true variable per clause.
inline std::optional<std::vector<bool>> one_in_three_solve(const SatInstance& s) {
  int n = static_cast<int>(s.variables.size());
  if (n > 24) throw Error(ErrorCode::TooLarge, "brute force handles at most 24 variables, instance has " + std::to_string(n));
  std::vector<std::vector<int>> occurs(n);
  for (size_t i = 0; i < s.clauses.size(); ++i)
    for (int x : s.clauses[i]) occurs[x].push_back(static_cast<int>(i));
  std::vector<int> value(n, -1);
  auto consistent = [&](int x) {
    for (int ci : occurs[x]) {
      int t = 0, open = 0;
      for (int y : s.clauses[ci]) {
        t += value[y] == 1;
        open += value[y] < 0;
      }
      if (t > 1 || (t == 0 && open == 0)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int v : {1, 0}) {
      value[x] = v;
      if (consistent(x) && self(self, x + 1)) return true;
    }
    value[x] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return std::vector<bool>(value.begin(), value.end());
}

// Text format: `var <name>`, `clause <a> <b> <c>` in cycle order, and
// `rot <vertex> <neighbour...>` where a vertex is a variable name or `#<i>` for
// the i-th clause. Three-SAT inputs may negate a literal with a leading '-' and
// use two-literal clauses.
namespace detail {

struct RawSat {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> clauses;
  std::vector<std::vector<std::string>> rot;
};

inline RawSat read_raw_sat(std::string_view text) {
  RawSat raw;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = io::split_ws(line);
    if (toks.empty() || toks[0] == "c") continue;
    std::vector<std::string> rest(toks.begin() + 1, toks.end());
    if (toks[0] == "var") {
      if (rest.size() != 1) io::fail(line_no, "var takes one name");
      if (rest[0][0] == '#' || rest[0][0] == '-') io::fail(line_no, "variable names may not start with '#' or '-'");
      raw.variables.push_back(rest[0]);
    } else if (toks[0] == "clause") {
      raw.clauses.push_back(rest);
    } else if (toks[0] == "rot") {
      if (rest.empty()) io::fail(line_no, "rot needs a vertex");
      raw.rot.push_back(rest);
    } else {
      io::fail(line_no, "unknown record '" + std::string(toks[0]) + "'");
    }
  }
  return raw;
}

inline std::vector<std::vector<int>> resolve_rotation(const RawSat& raw, const std::map<std::string, int>& var_id) {
  if (raw.rot.empty()) return {};
  int n = static_cast<int>(raw.variables.size()), m = static_cast<int>(raw.clauses.size());
  auto vertex = [&](const std::string& t) {
    if (t.size() > 1 && t[0] == '#') {
      int i = std::stoi(t.substr(1));
      if (i < 1 || i > m) throw Error(ErrorCode::ParseError, "rotation names unknown clause " + t);
      return n + i - 1;
    }
    auto it = var_id.find(t);
    if (it == var_id.end()) throw Error(ErrorCode::ParseError, "rotation names unknown vertex " + t);
    return it->second;
  };
  std::vector<std::vector<int>> rot(n + m);
  std::vector<char> seen(n + m, 0);
  for (const auto& r : raw.rot) {
    int v = vertex(r[0]);
    if (seen[v]) throw Error(ErrorCode::ParseError, "rotation of " + r[0] + " given twice");
    seen[v] = 1;
    for (size_t t = 1; t < r.size(); ++t) rot[v].push_back(vertex(r[t]));
  }
  return rot;
}

inline std::map<std::string, int> variable_ids(const std::vector<std::string>& vars) {
  std::map<std::string, int> id;
  for (size_t i = 0; i < vars.size(); ++i)
    if (!id.emplace(vars[i], static_cast<int>(i)).second)
      throw Error(ErrorCode::ParseError, "variable " + vars[i] + " declared twice");
  return id;
}

}  // namespace detail

inline ThreeSatInstance parse_three_sat(std::string_view text) {
  auto raw = detail::read_raw_sat(text);
  auto id = detail::variable_ids(raw.variables);
  ThreeSatInstance out;
  out.variables = raw.variables;
  for (const auto& c : raw.clauses) {
    std::vector<int> lits;
    for (const auto& t : c) {
      bool neg = !t.empty() && t[0] == '-';
      auto it = id.find(neg ? t.substr(1) : t);
      if (it == id.end()) throw Error(ErrorCode::ParseError, "clause uses undeclared variable " + t);
      lits.push_back(neg ? -(it->second + 1) : it->second + 1);
    }
    out.clauses.push_back(lits);
  }
  out.rotation = detail::resolve_rotation(raw, id);
  return out;
}

inline SatInstance parse_sat_instance(std::string_view text) {
  auto raw = detail::read_raw_sat(text);
  auto id = detail::variable_ids(raw.variables);
  SatInstance out;
  out.variables = raw.variables;
  for (const auto& c : raw.clauses) {
    if (c.size() != 3) throw Error(ErrorCode::ParseError, "positive clauses have exactly three variables");
    std::array<int, 3> cl{};
    for (int t = 0; t < 3; ++t) {
      auto it = id.find(c[t]);
      if (it == id.end()) throw Error(ErrorCode::ParseError, "clause uses undeclared variable " + c[t]);
      cl[t] = it->second;
    }
    out.clauses.push_back(cl);
  }
  out.rotation = detail::resolve_rotation(raw, id);
  if (out.rotation.empty()) {
    auto rot = planar_rotation(associated_cycle_graph(out));
    if (!rot) throw Error(ErrorCode::NotPlanarCyclic, "associated graph plus clause cycle is not planar");
    out.rotation = std::move(*rot);
  }
  validate_sat_instance(out);
  return out;
}

inline std::string write_sat_instance(const SatInstance& s) {
  std::ostringstream os;
  int n = static_cast<int>(s.variables.size());
  auto name = [&](int v) { return v < n ? s.variables[v] : "#" + std::to_string(v - n + 1); };
  for (const auto& v : s.variables) os << "var " << v << '\n';
  for (const auto& c : s.clauses) os << "clause " << s.variables[c[0]] << ' ' << s.variables[c[1]] << ' ' << s.variables[c[2]] << '\n';
  for (size_t v = 0; v < s.rotation.size(); ++v) {
    os << "rot " << name(static_cast<int>(v));
    for (int w : s.rotation[v]) os << ' ' << name(w);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Two-plane instances

struct PlaneCoverInstance {
  struct Variable {
    std::vector<int> clauses;  // indices of the clauses it occurs in, ascending
    std::vector<int> w, v;     // w[j] joins clause clauses[j]; v is a path
    std::vector<int> gadget;   // intersection line gadgets hanging off v
  };
  Graph g;
  std::vector<std::string> names;
  std::vector<std::array<int, 3>> clause_vertices;
  std::vector<Variable> variables;
  std::vector<int> caterpillar;
  std::vector<std::array<int, 2>> blockers;
};

inline PlaneCoverInstance build_plane_cover_instance(const SatInstance& phi) {
  validate_sat_instance(phi);
  PlaneCoverInstance out;
  auto vertex = [&](std::string name) {
    out.names.push_back(std::move(name));
    return out.g.add_vertex();
  };
  int m = static_cast<int>(phi.clauses.size());
  for (int i = 0; i < m; ++i) {
    std::array<int, 3> cv{};
    for (int t = 0; t < 3; ++t) cv[t] = vertex("clause:" + std::to_string(i + 1) + ":" + std::to_string(t + 1));
    out.g.add_edge(cv[0], cv[1]);
    out.g.add_edge(cv[1], cv[2]);
    out.clause_vertices.push_back(cv);
  }
  out.variables.resize(phi.variables.size());
  for (int i = 0; i < m; ++i)
    for (int x : phi.clauses[i]) out.variables[x].clauses.push_back(i);
  for (size_t x = 0; x < phi.variables.size(); ++x) {
    auto& var = out.variables[x];
    const std::string& nx = phi.variables[x];
    for (size_t j = 0; j < var.clauses.size(); ++j) {
      std::string idx = std::to_string(j + 1);
      int w = vertex("var:" + nx + ":w:" + idx), v = vertex("var:" + nx + ":v:" + idx);
      for (int c : out.clause_vertices[var.clauses[j]]) out.g.add_edge(w, c);
      out.g.add_edge(v, w);
      if (j > 0) out.g.add_edge(var.v.back(), v);
      var.w.push_back(w);
      var.v.push_back(v);
    }
    for (size_t j = 0; j < var.clauses.size(); ++j) {
      std::string p = "gadget:" + nx + ":" + std::to_string(j + 1) + ":";
      std::array<int, 3> sp{vertex(p + "v1"), vertex(p + "v2"), vertex(p + "v3")};
      std::array<int, 4> big{var.v[j], vertex(p + "u2"), vertex(p + "u3"), vertex(p + "u4")};
      for (int a : sp)
        for (int b : big) out.g.add_edge(a, b);
      out.g.add_edge(sp[0], sp[1]);
      out.g.add_edge(sp[1], sp[2]);
      var.gadget.insert(var.gadget.end(), sp.begin(), sp.end());
      var.gadget.insert(var.gadget.end(), big.begin() + 1, big.end());
    }
  }
  for (int i = 0; i < m; ++i) {
    int b = vertex("cat:" + std::to_string(i + 1));
    for (int c : out.clause_vertices[i]) out.g.add_edge(b, c);
    if (i > 0) out.g.add_edge(out.caterpillar.back(), b);
    out.caterpillar.push_back(b);
  }
  return out;
}

// Adds `extra` pairs of adjacent apexes, each joined to every clause vertex.
inline PlaneCoverInstance blocking_gadget(PlaneCoverInstance base, int extra) {
  if (extra < 0) throw Error(ErrorCode::InvalidArgument, "extra must be non-negative");
  for (int j = 0; j < extra; ++j) {
    std::array<int, 2> ab{};
    int id = static_cast<int>(base.blockers.size()) + 1;
    for (int t = 0; t < 2; ++t) {
      base.names.push_back("block:" + std::to_string(id) + ":" + std::to_string(t + 1));
      ab[t] = base.g.add_vertex();
      for (const auto& cv : base.clause_vertices)
        for (int c : cv) base.g.add_edge(ab[t], c);
    }
    base.g.add_edge(ab[0], ab[1]);
    base.blockers.push_back(ab);
  }
  return base;
}

inline std::string write_named_graph(const Graph& g, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (size_t v = 0; v < names.size(); ++v) os << "c " << v + 1 << ' ' << names[v] << '\n';
  os << write_graph(g);
  return os.str();
}

enum class Place { Line, PlaneT, PlaneF };

struct PlaneWitness {
  std::vector<Place> place;  // per vertex
  std::vector<int> side;     // half-plane of plane vertices: +1 or -1; 0 on the line
};

// Empty if the witness passes, else the first violated condition.
inline std::string witness_problem(const PlaneCoverInstance& inst, const PlaneWitness& w) {
  const Graph& g = inst.g;
  int n = g.order();
  if (static_cast<int>(w.place.size()) != n || static_cast<int>(w.side.size()) != n) return "witness size mismatch";
  if (!inst.blockers.empty()) return "blocking gadgets need more than two planes";
  std::vector<char> clause_vertex(n, 0), gadget(n, 0);
  for (const auto& cv : inst.clause_vertices)
    for (int c : cv) clause_vertex[c] = 1;
  for (const auto& var : inst.variables)
    for (int v : var.gadget) gadget[v] = 1;
  // (i)
  for (int v = 0; v < n; ++v) {
    if ((w.place[v] == Place::Line) != static_cast<bool>(clause_vertex[v])) return "(i) intersection line must hold exactly the clause vertices";
    if (w.place[v] != Place::Line && w.side[v] != 1 && w.side[v] != -1) return "plane vertex without a half-plane";
  }
  // (ii)
  for (const auto& var : inst.variables) {
    std::vector<int> all = var.w;
    all.insert(all.end(), var.v.begin(), var.v.end());
    all.insert(all.end(), var.gadget.begin(), var.gadget.end());
    for (int v : all)
      if (w.place[v] != w.place[all.front()]) return "(ii) a variable is split between planes";
  }
  // (iii)
  for (int b : inst.caterpillar)
    if (w.place[b] != Place::PlaneT) return "(iii) caterpillar vertex off the true plane";
  // (iv)
  for (Place p : {Place::PlaneT, Place::PlaneF}) {
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
      if (clause_vertex[v] || (w.place[v] == p && !gadget[v])) keep.push_back(v);
    if (!is_planar(induced_subgraph(g, keep))) return std::string("(iv) ") + (p == Place::PlaneT ? "true" : "false") + " plane is not planar";
  }
  // (v)
  std::vector<std::vector<int>> near(inst.clause_vertices.size());
  for (const auto& var : inst.variables)
    for (size_t j = 0; j < var.w.size(); ++j) near[var.clauses[j]].push_back(var.w[j]);
  for (size_t i = 0; i < near.size(); ++i) {
    int t = 0, f = 0;
    std::vector<std::pair<Place, int>> halves{{Place::PlaneT, w.side[inst.caterpillar[i]]}};
    for (int x : near[i]) {
      (w.place[x] == Place::PlaneT ? t : f) += 1;
      halves.emplace_back(w.place[x], w.side[x]);
    }
    if (t > 1 || f > 2) return "(v) clause " + std::to_string(i + 1) + " has too many neighbours in one plane";
    std::sort(halves.begin(), halves.end());
    if (std::adjacent_find(halves.begin(), halves.end()) != halves.end())
      return "(v) clause " + std::to_string(i + 1) + " has two neighbours in one half-plane";
  }
  return {};
}

inline bool verify_witness(const PlaneCoverInstance& inst, const PlaneWitness& w) { return witness_problem(inst, w).empty(); }

inline PlaneWitness two_plane_witness(const SatInstance& phi, const PlaneCoverInstance& inst, const std::vector<bool>& value) {
  if (value.size() != phi.variables.size()) throw Error(ErrorCode::InvalidArgument, "assignment size mismatch");
  for (size_t i = 0; i < phi.clauses.size(); ++i) {
    int t = 0;
    for (int x : phi.clauses[i]) t += value[x];
    if (t != 1) throw Error(ErrorCode::NotSatisfying, "clause " + std::to_string(i + 1) + " has " + std::to_string(t) + " true variables");
  }
  int n = inst.g.order();
  PlaneWitness w{std::vector<Place>(n, Place::Line), std::vector<int>(n, 0)};
  for (int b : inst.caterpillar) {
    w.place[b] = Place::PlaneT;
    w.side[b] = -1;
  }
  // the true neighbour of a clause faces the caterpillar; the two false ones split
  std::vector<int> false_seen(phi.clauses.size(), 0);
  for (size_t x = 0; x < inst.variables.size(); ++x) {
    const auto& var = inst.variables[x];
    Place p = value[x] ? Place::PlaneT : Place::PlaneF;
    for (size_t j = 0; j < var.w.size(); ++j) {
      int s = value[x] ? 1 : (false_seen[var.clauses[j]]++ == 0 ? 1 : -1);
      w.place[var.w[j]] = p;
      w.side[var.w[j]] = s;
    }
    int s = var.w.empty() ? 1 : w.side[var.w.front()];
    for (const auto* part : {&var.v, &var.gadget})
      for (int v : *part) {
        w.place[v] = p;
        w.side[v] = s;
      }
  }
  return w;
}

}  // namespace affcover
