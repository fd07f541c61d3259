#include <gtest/gtest.h>

#include <random>

#include "affcover/formula.hpp"
#include "affcover/geom.hpp"
#include "affcover/solver.hpp"
#include "affcover/stretch.hpp"
#include "affcover/templates.hpp"
#include "support/geometry.hpp"
#include "support/graphs.hpp"

using namespace affcover;
using namespace testsupport;

namespace {

using P = Point<Rational>;

bool overlap_beyond_shared(const P& s, const P& a, const P& m) {
  auto u = a - s, w = m - s;
  for (int i = 0; i < u.dim(); ++i)
    for (int j = i + 1; j < u.dim(); ++j)
      if (u[i] * w[j] != u[j] * w[i]) return false;
  return dot(u, w) > 0;
}

bool drawing_ok(const Graph& g, const std::vector<P>& pos) {
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j)
      if (pos[i] == pos[j]) return false;
  const auto& es = g.edges();
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      const Edge &e = es[i], &f = es[j];
      int s = e.touches(f.u) ? f.u : e.touches(f.v) ? f.v : -1;
      if (s < 0) {
        if (segments_meet_oracle(pos[e.u], pos[e.v], pos[f.u], pos[f.v])) return false;
      } else if (overlap_beyond_shared(pos[s], pos[e.other(s)], pos[f.other(s)])) {
        return false;
      }
    }
  return true;
}

Rational triple(const P& a, const P& b, const P& c, const P& x) {
  return dot(cross(b - a, c - a), x - a);
}

// Direct check of "these points draw g on these flats".
bool rho_oracle(const Graph& g, int d, int l, const std::vector<P>& pos, const std::vector<std::vector<P>>& flats) {
  for (const auto& fl : flats) {
    if (l == 1 && fl[0] == fl[1]) return false;
    if (l == 2 && is_zero(cross(fl[1] - fl[0], fl[2] - fl[0]))) return false;
  }
  if (!drawing_ok(g, pos)) return false;
  for (const auto& e : g.edges()) {
    bool any = false;
    for (const auto& fl : flats) {
      if (l == 1)
        any = any || (on_segment(pos[e.u], fl[0], fl[1]) && on_segment(pos[e.v], fl[0], fl[1]));
      else
        any = any || (triple(fl[0], fl[1], fl[2], pos[e.u]) == 0 && triple(fl[0], fl[1], fl[2], pos[e.v]) == 0);
    }
    if (!any) return false;
  }
  (void)d;
  return true;
}

std::vector<Rational> flatten(const std::vector<P>& pts) {
  std::vector<Rational> x;
  for (const auto& p : pts)
    for (int i = 0; i < p.dim(); ++i) x.push_back(p[i]);
  return x;
}

TemplateGraph x_template() {
  FactorizedGraph f;
  f.graph = Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 1}, {1, 4}});
  f.factors = {{0, 1, 2}, {3, 1, 4}};
  return to_template(f);
}

}  // namespace

TEST(RhoFormula, VariableCounts) {
  auto g = path_graph(4);
  EXPECT_EQ(emit_rho_formula(g, 1, 2, 1).variables.size(), 2u * 4 + 4 * 1);
  EXPECT_EQ(emit_rho_formula(g, 3, 2, 1).variables.size(), 2u * 4 + 4 * 3);
  EXPECT_EQ(emit_rho_formula(g, 2, 3, 1).variables.size(), 3u * 4 + 6 * 2);
  EXPECT_EQ(emit_rho_formula(g, 2, 3, 2).variables.size(), 3u * 4 + 9 * 2);
  EXPECT_EQ(emit_rho_formula(complete_graph(5), 2, 3, 2).variables.size(), 15u + 18);
  auto f = emit_rho_formula(path_graph(2), 1, 2, 1);
  EXPECT_EQ(f.variables, (std::vector<std::string>{"v1_x", "v1_y", "v2_x", "v2_y", "p1_x", "p1_y", "q1_x", "q1_y"}));
}

TEST(RhoFormula, Errors) {
  for (auto [d, l] : std::vector<std::pair<int, int>>{{2, 2}, {2, 0}, {4, 1}, {3, 3}}) {
    try {
      emit_rho_formula(path_graph(3), 1, d, l);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnsupportedCombination);
    }
  }
  try {
    emit_rho_formula(path_graph(3), 0, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidK);
  }
}

TEST(RhoFormula, DegreeAndCoefficients) {
  for (auto [d, l] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    auto f = emit_rho_formula(complete_graph(4), 2, d, l);
    EXPECT_LE(max_atom_degree(f), 4);
    EXPECT_TRUE(coefficients_ok(f));
  }
}

TEST(RhoFormula, EmptyGraphIsTrue) {
  auto f = emit_rho_formula(Graph(0), 1, 2, 1);
  EXPECT_EQ(f.variables.size(), 4u);
  EXPECT_TRUE(evaluate(f, {Rational(0), Rational(0), Rational(1), Rational(0)}));
  EXPECT_FALSE(evaluate(f, std::vector<Rational>(4, Rational(0))));
}

// Random rational points, half of them planted on the flats, against the
// direct geometric check.
TEST(RhoFormula, AgreesWithGeometricOracle) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> c(-1, 1);
  const Rational ts[] = {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3), Rational(2, 3)};
  std::vector<Graph> gs = {path_graph(2), path_graph(3), star(3), cycle_graph(3), path_graph(4)};
  int trues = 0, falses = 0;
  for (auto [d, l] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}})
    for (const auto& g : gs)
      for (int k = 1; k <= 2; ++k) {
        auto f = emit_rho_formula(g, k, d, l, false);
        auto anchored = emit_rho_formula(g, k, d, l);
        for (int it = 0; it < 400; ++it) {
          auto rp = [&] {
            auto p = P(std::vector<Rational>(d));
            for (int i = 0; i < d; ++i) p[i] = Rational(c(rng));
            return p;
          };
          std::vector<std::vector<P>> flats(k);
          for (auto& fl : flats)
            for (int j = 0; j <= l; ++j) fl.push_back(rp());
          std::vector<P> pos;
          for (int v = 0; v < g.order(); ++v) {
            if (rng() % 4 == 0) {
              pos.push_back(rp());
              continue;
            }
            const auto& fl = flats[rng() % k];
            Rational s = ts[rng() % 5], t = ts[rng() % 5];
            P p = fl[0] + s * (fl[1] - fl[0]);
            if (l == 2) p = p + t * (fl[2] - fl[0]);
            pos.push_back(p);
          }
          std::vector<P> all = pos;
          for (const auto& fl : flats) all.insert(all.end(), fl.begin(), fl.end());
          bool want = rho_oracle(g, d, l, pos, flats);
          EXPECT_EQ(evaluate(f, flatten(all)), want) << "d=" << d << " l=" << l << " k=" << k;
          bool unit = true;
          for (int j = 0; j <= l; ++j)
            for (int i = 0; i < d; ++i) unit = unit && flats[0][j][i] == (j > 0 && i == j - 1 ? 1 : 0);
          EXPECT_EQ(evaluate(anchored, flatten(all)), want && unit);
          (want ? trues : falses)++;
        }
      }
  EXPECT_GT(trues, 100);
  EXPECT_GT(falses, 100);
}

TEST(StretchFormula, VariableCountsAndErrors) {
  EXPECT_EQ(emit_stretch_formula(x_template(), 2).variables.size(), 10u);
  EXPECT_EQ(emit_stretch_formula(x_template(), 3).variables.size(), 15u);
  std::mt19937_64 rng(4);
  auto tri = augmented_arrangement_graph(random_simple_lines(3, rng), 2);
  EXPECT_EQ(emit_stretch_formula(tri.templ, 2).variables.size(), 30u);
  TemplateGraph single;
  single.fg.graph = path_graph(3);
  single.fg.factors = {{0, 1, 2}};
  single.kind = {VertexKind::Tail, VertexKind::Crossing, VertexKind::Tail};
  try {
    emit_stretch_formula(single, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidTemplate);
  }
  auto f = emit_stretch_formula(tri.templ, 3);
  EXPECT_LE(max_atom_degree(f), 4);
  EXPECT_TRUE(coefficients_ok(f));
}

TEST(StretchFormula, TrueOnExactRealizations) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 12; ++it) {
    auto a = augmented_arrangement_graph(random_simple_lines(2 + it % 3, rng, 10), 2);
    auto f2 = emit_stretch_formula(a.templ, 2);
    EXPECT_TRUE(evaluate(f2, flatten(a.realization.positions)));
    auto lifted = lift_to_space(a.realization);
    EXPECT_TRUE(evaluate(emit_stretch_formula(a.templ, 3), flatten(lifted.positions)));
    // bending one factor at an interior vertex breaks it
    auto bent = a.realization.positions;
    int v = a.templ.factors()[0][2];
    bent[v] = bent[v] + Rational(1, 997) * rpoint(0, 1);
    bent[v] = bent[v] + Rational(1, 991) * rpoint(1, 0);
    EXPECT_FALSE(evaluate(f2, flatten(bent)));
  }
}

TEST(SolverText, ProductExample) {
  RealFormula f;
  f.variables = {"x"};
  auto x = Poly::var(0), one = Poly::constant(1);
  f.matrix = fm::eq(x * x, one + one);
  EXPECT_EQ(to_solver_text(f),
            "(set-logic QF_NRA)\n(declare-fun x () Real)\n(assert (= (* x x) (+ 1.0 1.0)))\n(check-sat)\n");
  EXPECT_FALSE(evaluate(f, {Rational(1)}));
  EXPECT_THROW(Poly::constant(2), Error);
}

TEST(SolverText, ByteStable) {
  auto a = to_solver_text(emit_rho_formula(cycle_graph(4), 2, 3, 2));
  auto b = to_solver_text(emit_rho_formula(cycle_graph(4), 2, 3, 2));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("(set-logic QF_NRA)\n", 0), 0u);
  EXPECT_NE(a.find("(declare-fun c2_z () Real)"), std::string::npos);
  int depth = 0;
  for (char ch : a) {
    depth += ch == '(' ? 1 : ch == ')' ? -1 : 0;
    ASSERT_GE(depth, 0);
  }
  EXPECT_EQ(depth, 0);
}

TEST(SolverOutput, Parsing) {
  auto r = parse_solver_output("sat\n(model\n  (define-fun x () Real (/ 1.0 3.0))\n  (define-fun y () Real (- 2.0)))\n");
  EXPECT_EQ(r.status, SolverStatus::Sat);
  EXPECT_EQ(*r.model.at("x"), Rational(1, 3));
  EXPECT_EQ(*r.model.at("y"), Rational(-2));
  EXPECT_EQ(parse_solver_output("  unsat\n").status, SolverStatus::Unsat);
  EXPECT_THROW(parse_solver_output(""), Error);
  EXPECT_THROW(parse_solver_output("(error \"x\")\n"), Error);
}

TEST(ExternalSolver, SmallRhoInstances) {
  auto cmd = solver_command();
  if (!cmd) GTEST_SKIP() << "AFFCOVER_SOLVER not set";
  EXPECT_EQ(run_solver(*cmd, to_solver_text(emit_rho_formula(path_graph(2), 1, 2, 1))).status, SolverStatus::Sat);
  EXPECT_EQ(run_solver(*cmd, to_solver_text(emit_rho_formula(star(3), 1, 2, 1))).status, SolverStatus::Unsat);
  EXPECT_NE(run_solver(*cmd, to_solver_text(emit_rho_formula(star(3), 2, 2, 1))).status, SolverStatus::Unsat);
}
