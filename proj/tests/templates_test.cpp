#include <gtest/gtest.h>

#include <random>

#include "affcover/geom.hpp"
#include "affcover/templates.hpp"
#include "support/factorized.hpp"
#include "support/geometry.hpp"
#include "support/graphs.hpp"

using namespace affcover;
using namespace testsupport;

namespace {

FactorizedGraph x_pretemplate() {
  FactorizedGraph f;
  f.graph = Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 1}, {1, 4}});
  f.factors = {{0, 1, 2}, {3, 1, 4}};
  return f;
}

// Three pairwise crossing factors: junctions 0 (f1,f2), 1 (f1,f3), 2 (f2,f3).
FactorizedGraph triangle_pretemplate() {
  FactorizedGraph f;
  f.graph = Graph(9);
  f.factors = {{3, 0, 1, 4}, {5, 0, 2, 6}, {7, 1, 2, 8}};
  for (const auto& p : f.factors)
    for (size_t t = 0; t + 1 < p.size(); ++t) f.graph.add_edge(p[t], p[t + 1]);
  return f;
}

long long count_bound(int k) {
  long long per = (1LL << (2 * k));
  for (int i = 2; i <= k; ++i) per *= i;
  long long b = 1;
  for (int i = 0; i < k; ++i) b *= per;
  return b;
}

}  // namespace

TEST(Pretemplates, SmallK) {
  EXPECT_TRUE(enumerate_pretemplates(1).empty());
  auto two = enumerate_pretemplates(2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_TRUE(factorized_isomorphic(two[0], x_pretemplate()));
}

TEST(Pretemplates, ThreeMatchesBruteForce) {
  auto got = enumerate_pretemplates(3);
  auto want = brute_force_pretemplates(3);
  EXPECT_EQ(got.size(), want.size());
  for (const auto& g : got) {
    EXPECT_TRUE(valid_pretemplate(g)) << write_factorized(g);
    int matches = 0;
    for (const auto& w : want) matches += factorized_isomorphic(g, w);
    EXPECT_EQ(matches, 1) << write_factorized(g);
  }
  // pairwise non-isomorphic
  for (size_t i = 0; i < got.size(); ++i)
    for (size_t j = i + 1; j < got.size(); ++j) EXPECT_FALSE(factorized_isomorphic(got[i], got[j]));
}

TEST(Pretemplates, FourIsValidDistinctAndBounded) {
  auto got = enumerate_pretemplates(4);
  EXPECT_LE(static_cast<long long>(got.size()), count_bound(4));
  EXPECT_EQ(got.size(), brute_force_pretemplates(4).size());
  for (const auto& g : got) {
    EXPECT_TRUE(valid_pretemplate(g));
    EXPECT_LE(g.graph.order(), 2 * 4 + 6);
  }
}

TEST(Pretemplates, Deterministic) {
  auto a = enumerate_pretemplates(3), b = enumerate_pretemplates(3);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].graph, b[i].graph);
    EXPECT_EQ(a[i].factors, b[i].factors);
  }
}

TEST(Pretemplates, CanonicalCodeIsInvariant) {
  std::mt19937_64 rng(3);
  for (const auto& f : enumerate_pretemplates(3)) {
    auto code = canonical_code(f);
    for (int it = 0; it < 10; ++it) {
      // relabel vertices, shuffle and reverse factors
      std::vector<int> perm(f.graph.order());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      FactorizedGraph g;
      g.graph = Graph(f.graph.order());
      for (const auto& e : f.graph.edges()) g.graph.add_edge(perm[e.u], perm[e.v]);
      for (auto p : f.factors) {
        for (int& v : p) v = perm[v];
        if (rng() & 1) std::reverse(p.begin(), p.end());
        g.factors.push_back(p);
      }
      std::shuffle(g.factors.begin(), g.factors.end(), rng);
      EXPECT_EQ(canonical_code(g), code);
    }
  }
}

TEST(Pretemplates, CheckerRejects) {
  auto x = x_pretemplate();
  EXPECT_TRUE(is_pretemplate(x));
  FactorizedGraph edge;
  edge.graph = Graph::from_edges(4, {{0, 1}, {2, 3}});
  edge.factors = {{0, 1}, {2, 3}};
  EXPECT_FALSE(is_pretemplate(edge));
  FactorizedGraph bent;  // a factor through a degree-2 vertex
  bent.graph = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {4, 1}, {1, 5}});
  bent.factors = {{0, 1, 2, 3}, {4, 1, 5}};
  std::string why;
  EXPECT_FALSE(is_pretemplate(bent, &why));
  EXPECT_NE(why.find("degree-2"), std::string::npos);
  try {
    to_template(bent);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPreTemplate);
  }
}

TEST(ToTemplate, Examples) {
  auto x = to_template(x_pretemplate());
  EXPECT_EQ(x.graph().order(), 5);
  EXPECT_EQ(x.graph().size(), 4);
  EXPECT_NO_THROW(validate_template(x));

  auto tri = to_template(triangle_pretemplate());
  EXPECT_EQ(tri.graph().order(), 15);
  EXPECT_EQ(tri.graph().size(), 15);
  EXPECT_NO_THROW(validate_template(tri));
  std::mt19937_64 rng(9);
  auto arr = augmented_arrangement_graph(random_simple_lines(3, rng), 2);
  EXPECT_TRUE(factorized_isomorphic(tri.fg, arr.templ.fg));
}

TEST(ToTemplate, GrowthMatchesInnerEdges) {
  for (int k = 2; k <= 4; ++k)
    for (const auto& f : enumerate_pretemplates(k)) {
      int inner = 0;
      for (const auto& e : f.graph.edges()) inner += f.graph.degree(e.u) != 1 && f.graph.degree(e.v) != 1;
      auto t = to_template(f);
      EXPECT_EQ(t.graph().order(), f.graph.order() + 2 * inner);
      EXPECT_EQ(t.graph().size(), f.graph.size() + 2 * inner);
      EXPECT_NO_THROW(validate_template(t));
    }
}

TEST(FactorizedFormat, RoundTrip) {
  for (const auto& f : enumerate_pretemplates(3)) {
    auto back = parse_factorized(write_factorized(f));
    EXPECT_EQ(back.graph, f.graph);
    EXPECT_EQ(back.factors, f.factors);
  }
  EXPECT_THROW(parse_factorized("p 3 2\ne 1 2\ne 2 3\nf 2 1 2 3\n"), Error);
}

TEST(Embedding, Examples) {
  auto x = to_template(x_pretemplate());
  auto m3 = find_embedding(star(3), x);
  ASSERT_TRUE(m3.has_value());
  EXPECT_EQ(m3->gamma[0], 1);
  EXPECT_TRUE(is_embedding(star(3), x, *m3));
  auto m4 = find_embedding(star(4), x);
  ASSERT_TRUE(m4.has_value());
  EXPECT_EQ(m4->gamma[0], 1);
  EXPECT_FALSE(find_embedding(complete_graph(3), x).has_value());
  EXPECT_FALSE(find_embedding(star(5), x).has_value());
  auto tri = to_template(triangle_pretemplate());
  auto mt = find_embedding(complete_graph(3), tri);
  ASSERT_TRUE(mt.has_value());
  EXPECT_TRUE(is_embedding(complete_graph(3), tri, *mt));
}

TEST(Embedding, Descriptions) {
  auto x = to_template(x_pretemplate());
  auto m3 = *find_embedding(star(3), x);
  auto d3 = description_from_embedding(m3, star(3), x);
  EXPECT_EQ(description_problem(star(3), d3), "");
  int long_lines = 0, short_lines = 0;
  for (const auto& l : d3.lines) {
    ASSERT_EQ(l.size(), 1u);
    long_lines += l[0].size() == 3 && l[0][1] == 0;
    short_lines += l[0].size() == 2 && (l[0][0] == 0 || l[0][1] == 0);
  }
  EXPECT_EQ(long_lines, 1);
  EXPECT_EQ(short_lines, 1);

  auto d4 = description_from_embedding(*find_embedding(star(4), x), star(4), x);
  for (const auto& l : d4.lines) {
    ASSERT_EQ(l.size(), 1u);
    EXPECT_EQ(l[0].size(), 3u);
    EXPECT_EQ(l[0][1], 0);
  }

  auto empty = description_from_embedding(EmbeddingMap{}, Graph(0), x);
  ASSERT_EQ(empty.k(), 2);
  EXPECT_TRUE(empty.lines[0].empty() && empty.lines[1].empty());
}

TEST(Embedding, AgreesWithExhaustiveInjectionsAndCoversEdges) {
  // all small graphs without isolated vertices against the k=2 and k=3 templates
  std::vector<TemplateGraph> ts;
  for (int k = 2; k <= 3; ++k)
    for (const auto& f : enumerate_pretemplates(k)) ts.push_back(to_template(f));
  int found = 0, checked = 0;
  for (int n = 2; n <= 6; ++n)
    for (const auto& g : all_graphs(n)) {
      bool ok = g.size() > 0;
      for (int v = 0; v < n; ++v) ok = ok && g.degree(v) != 0;
      if (!ok) continue;
      for (const auto& t : ts) {
        bool brute = embeds_by_injection(g, t.fg);
        auto m = find_embedding(g, t);
        EXPECT_EQ(m.has_value(), brute) << write_graph(g) << write_factorized(t.fg);
        ++checked;
        if (m) {
          ++found;
          EXPECT_TRUE(is_embedding(g, t, *m));
          EXPECT_EQ(description_problem(g, description_from_embedding(*m, g, t)), "");
        }
      }
    }
  EXPECT_GT(checked, 20);
  EXPECT_GT(found, 5);
}

TEST(Embedding, DeterministicFirstEmbedding) {
  auto tri = to_template(triangle_pretemplate());
  auto a = find_embedding(subdivide(complete_graph(3), 0), tri);
  auto b = find_embedding(subdivide(complete_graph(3), 0), tri);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->gamma, b->gamma);
}

TEST(Embedding, ArrangementTemplatesMatchExactlyOnePretemplate) {
  std::mt19937_64 rng(12);
  std::map<int, std::vector<TemplateGraph>> by_k;
  for (int k = 2; k <= 4; ++k)
    for (const auto& f : enumerate_pretemplates(k)) by_k[k].push_back(to_template(f));
  for (int it = 0; it < 20; ++it) {
    int l = 2 + it % 3;
    auto a = augmented_arrangement_graph(random_simple_lines(l, rng), 2);
    int matches = 0;
    for (const auto& t : by_k[l]) matches += factorized_isomorphic(t.fg, a.templ.fg);
    EXPECT_EQ(matches, 1);
  }
}
