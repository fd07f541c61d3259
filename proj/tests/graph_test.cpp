#include <gtest/gtest.h>

#include <random>
#include <set>

#include "affcover/graph.hpp"
#include "affcover/graph_io.hpp"
#include "support/graphs.hpp"

using namespace affcover;
using namespace testsupport;

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(DegreeProfile, Examples) {
  auto c4 = degree_profile(cycle_graph(4));
  EXPECT_TRUE(c4.v1.empty());
  EXPECT_EQ(c4.v2.size(), 4u);
  EXPECT_TRUE(c4.v3plus.empty());

  auto k13 = degree_profile(star(3));
  EXPECT_EQ(k13.v1, (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(k13.v2.empty());
  EXPECT_EQ(k13.v3plus, (std::vector<int>{0}));

  auto p3 = degree_profile(path_graph(3));
  EXPECT_EQ(p3.v1, (std::vector<int>{0, 2}));
  EXPECT_EQ(p3.v2, (std::vector<int>{1}));
}

TEST(DegreeProfile, PartitionsVertices) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    Graph g = random_graph(9, 0.3, rng);
    auto p = degree_profile(g);
    std::vector<int> all;
    for (auto* s : {&p.v0, &p.v1, &p.v2, &p.v3plus}) all.insert(all.end(), s->begin(), s->end());
    EXPECT_EQ(sorted(all), sorted([&] {
                std::vector<int> v(g.order());
                std::iota(v.begin(), v.end(), 0);
                return v;
              }()));
  }
}

TEST(StraightPaths, SubdividedClaw) {
  auto paths = straight_paths(subdivide(star(3), 1));
  ASSERT_EQ(paths.size(), 3u);
  for (const auto& p : paths) {
    EXPECT_EQ(p.vertices.size(), 3u);
    EXPECT_EQ(p.first(), 0);
    EXPECT_EQ(p.front, EndKind::Branch);
    EXPECT_EQ(p.back, EndKind::Leaf);
  }
}

TEST(StraightPaths, K4HasSixSingleEdges) {
  auto paths = straight_paths(complete_graph(4));
  ASSERT_EQ(paths.size(), 6u);
  for (const auto& p : paths) EXPECT_EQ(p.vertices.size(), 2u);
}

TEST(StraightPaths, BareCycleRejected) {
  try {
    straight_paths(cycle_graph(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CycleComponent);
  }
}

TEST(StraightPaths, EveryDegreeTwoEdgeOnExactlyOnePath) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    Graph g = subdivide(random_graph(6, 0.5, rng), it % 3);
    auto st = straight_structure(g);
    if (!st.cycles.empty()) continue;
    std::map<Edge, int> hits;
    for (const auto& p : st.paths) {
      for (size_t t = 1; t + 1 < p.vertices.size(); ++t) EXPECT_EQ(g.degree(p.vertices[t]), 2);
      EXPECT_NE(g.degree(p.first()), 2);
      EXPECT_NE(g.degree(p.last()), 2);
      for (size_t t = 0; t + 1 < p.vertices.size(); ++t) {
        ASSERT_TRUE(g.has_edge(p.vertices[t], p.vertices[t + 1]));
        ++hits[Edge(p.vertices[t], p.vertices[t + 1])];
      }
    }
    for (const auto& e : g.edges()) EXPECT_EQ(hits[e], 1);
  }
}

TEST(Smooth, Examples) {
  auto p5 = smooth(path_graph(5), {});
  EXPECT_EQ(p5.graph.order(), 2);
  EXPECT_EQ(p5.graph.size(), 1);
  EXPECT_EQ(p5.new_to_old, (std::vector<int>{0, 4}));

  auto p5m = smooth(path_graph(5), {2});
  EXPECT_EQ(p5m.graph.order(), 3);
  EXPECT_EQ(p5m.graph.size(), 2);
  EXPECT_EQ(p5m.new_to_old, (std::vector<int>{0, 2, 4}));

  // the subdivided triangle is a 6-cycle: every vertex has degree 2, so the
  // three original corners have to be kept to get the triangle back
  auto tri = smooth(subdivide(complete_graph(3), 1), {0, 1, 2});
  EXPECT_EQ(tri.graph, complete_graph(3));
  EXPECT_THROW(smooth(subdivide(complete_graph(3), 1), {}), Error);
}

TEST(Smooth, ParallelCollapseIsReported) {
  // three straight paths between the same pair of branch vertices
  try {
    smooth(complete_bipartite(2, 3), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultiEdgeCollapse);
  }
  try {
    smooth(cycle_graph(4), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultiEdgeCollapse);
  }
}

TEST(Smooth, IdentityWhenKeepingAllDegreeTwo) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    Graph g = subdivide(random_graph(6, 0.4, rng), it % 2);
    auto r = smooth(g, degree_profile(g).v2);
    EXPECT_EQ(r.graph, g);
  }
}

TEST(Smooth, PreservesStraightPathEndpointPairs) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    Graph g = subdivide(random_graph(6, 0.5, rng), 1 + it % 2);
    auto st = straight_structure(g);
    if (!st.cycles.empty()) continue;
    SmoothResult r;
    try {
      r = smooth(g, {});
    } catch (const Error&) {
      continue;
    }
    std::multiset<std::pair<int, int>> before, after;
    for (const auto& p : st.paths) before.emplace(p.first(), p.last());
    for (const auto& p : straight_paths(r.graph))
      after.emplace(r.new_to_old[p.first()], r.new_to_old[p.last()]);
    EXPECT_EQ(before, after);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(LinearForest, Examples) {
  Graph c6 = cycle_graph(6);
  EXPECT_TRUE(is_linear_forest(c6, {0, 1, 2, 3, 4}));
  EXPECT_TRUE(is_linear_forest(c6, {1, 2, 3, 4, 5}));
  EXPECT_FALSE(is_linear_forest(c6, {0, 1, 2, 3, 4, 5}));
  EXPECT_FALSE(is_linear_forest(star(3), {0, 1, 2, 3}));
}

TEST(LinearForest, MatchesCountCharacterization) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 300; ++it) {
    Graph g = random_graph(8, 0.35, rng);
    std::vector<int> w;
    for (int v = 0; v < g.order(); ++v)
      if (rng() & 1) w.push_back(v);
    Graph h = induced_subgraph(g, w);
    bool expect = h.max_degree() <= 2 && h.size() == h.order() - static_cast<int>(components(h).size());
    EXPECT_EQ(is_linear_forest(g, w), expect);
  }
}

TEST(Planarity, Examples) {
  EXPECT_TRUE(is_planar(complete_graph(4)));
  EXPECT_FALSE(is_planar(complete_graph(5)));
  EXPECT_FALSE(is_planar(complete_bipartite(3, 3)));
  EXPECT_FALSE(is_planar(petersen()));
}

TEST(Planarity, AgreesWithKuratowskiOnAllSmallGraphs) {
  KuratowskiOracle oracle;
  int total = 0;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& g : all_graphs(n)) {
      bool p = is_planar(g);
      if (n >= 3 && g.size() > 3 * n - 6) {
        EXPECT_FALSE(p);
      }
      EXPECT_EQ(p, oracle.planar(g)) << write_graph(g);
      ++total;
    }
  }
  EXPECT_EQ(total, 1 + 2 + 4 + 11 + 34 + 156 + 1044);
}

TEST(Planarity, RotationSystemsAreValid) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 100; ++it) {
    Graph g = random_graph(9, 0.3, rng);
    auto rot = planar_rotation(g);
    EXPECT_EQ(rot.has_value(), is_planar(g));
    if (rot) {
      EXPECT_TRUE(is_planar_rotation(g, *rot));
    }
  }
  // K4 with a non-planar rotation: swap two neighbours at every vertex of a K4
  Graph k4 = complete_graph(4);
  auto rot = *planar_rotation(k4);
  EXPECT_TRUE(is_planar_rotation(k4, rot));
  std::swap(rot[0][0], rot[0][1]);
  EXPECT_FALSE(is_planar_rotation(k4, rot));
}

TEST(GraphFormat, ParsesTriangle) {
  Graph g = parse_graph("c a triangle\np 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  EXPECT_EQ(g, complete_graph(3));
  EXPECT_EQ(parse_graph(write_graph(petersen())), petersen());
}

TEST(GraphFormat, Errors) {
  auto code_of = [](const char* text) {
    try {
      parse_graph(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of("p 2 1\ne 1 1\n"), ErrorCode::SelfLoop);
  EXPECT_EQ(code_of("p 2 2\ne 1 2\ne 2 1\n"), ErrorCode::DuplicateEdge);
  EXPECT_EQ(code_of("p 3 3\ne 1 2\ne 2 3\n"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("e 1 2\n"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("p 2 1\ne 1 3\n"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("p 2 1\nx 1 2\n"), ErrorCode::ParseError);
  try {
    parse_graph("p 3 2\ne 1 2\ne 2 x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}
