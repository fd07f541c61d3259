#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "affcover/kernel.hpp"
#include "support/graphs.hpp"

using namespace affcover;
using namespace testsupport;

namespace {

long long vertex_bound(long long k) { return choose2(k) * (2 * k * k + 1) + 4 * k * k; }

// Cycle components are kept (see kernelize), each contracted to max(C(k,2),3)
// vertices, and there are at most C(k,2)/3 of them.
long long vertex_bound_with_cycles(long long k) {
  return vertex_bound(k) + choose2(k) / 3 * std::max(choose2(k), 3LL);
}

Graph grid(int w, int h) {
  Graph g(w * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) g.add_edge(y * w + x, y * w + x + 1);
      if (y + 1 < h) g.add_edge(y * w + x, (y + 1) * w + x);
    }
  return g;
}

}  // namespace

TEST(Kernelize, Examples) {
  auto p5 = kernelize(path_graph(5), 1);
  EXPECT_EQ(p5.verdict, KernelVerdict::Reduced);
  EXPECT_EQ(p5.h.order(), 0);
  ASSERT_EQ(p5.dropped_paths.size(), 1u);
  EXPECT_EQ(p5.dropped_paths[0], (std::vector<int>{0, 1, 2, 3, 4}));

  auto k13 = kernelize(star(3), 1);
  EXPECT_EQ(k13.verdict, KernelVerdict::RejectedByCounts);
  EXPECT_EQ(k13.h, star(3));
  EXPECT_TRUE(k13.vertex_map.empty());
  EXPECT_FALSE(k13.reason.empty());

  auto long_claw = kernelize(subdivide(star(3), 100), 3);
  EXPECT_EQ(long_claw.verdict, KernelVerdict::Reduced);
  EXPECT_EQ(long_claw.h.order(), 13);
  EXPECT_EQ(long_claw.h.size(), 12);
  EXPECT_EQ(degree_profile(long_claw.h).v3plus.size(), 1u);
  for (const auto& p : straight_paths(long_claw.h)) EXPECT_EQ(p.interior_count(), 3);
}

TEST(Kernelize, InvalidK) {
  try {
    kernelize(star(3), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidK);
  }
}

TEST(Kernelize, SentinelIsStar) {
  for (int k = 1; k <= 5; ++k) {
    Graph s = rejection_sentinel(k);
    EXPECT_EQ(s, star(2 * k + 1));
  }
}

TEST(Kernelize, RejectionReasonsFollowCheckOrder) {
  // five branch vertices > C(3,2)
  auto r = kernelize(complete_graph(5), 3);
  EXPECT_EQ(r.verdict, KernelVerdict::RejectedByCounts);
  EXPECT_NE(r.reason.find("degree >= 3"), std::string::npos);
  // K_{1,5} at k=2: one branch vertex fits, five leaves exceed 2(k^2-k) = 4
  auto s = kernelize(star(5), 2);
  EXPECT_EQ(s.verdict, KernelVerdict::RejectedByCounts);
  EXPECT_NE(s.reason.find("degree-1"), std::string::npos);
  EXPECT_EQ(s.h, star(5));
  // a bare triangle needs three crossings: fine for k=3, too many for k=2
  EXPECT_EQ(kernelize(cycle_graph(3), 3).verdict, KernelVerdict::Reduced);
  auto c = kernelize(cycle_graph(3), 2);
  EXPECT_EQ(c.verdict, KernelVerdict::RejectedByCounts);
  EXPECT_NE(c.reason.find("cycle"), std::string::npos);
}

TEST(Kernelize, ContractsCyclesAndKeepsNearestVertices) {
  auto r = kernelize(cycle_graph(40), 4);
  ASSERT_EQ(r.verdict, KernelVerdict::Reduced);
  EXPECT_EQ(r.h, cycle_graph(6));
  EXPECT_EQ(r.vertex_map, (std::vector<int>{0, 1, 2, 3, 4, 5}));

  // path 0 -x- 1 with long interior hanging between two triangles' apexes
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  g.add_edge(3, 5);
  g.add_edge(4, 5);
  int prev = 0;
  for (int t = 0; t < 10; ++t) {
    int x = g.add_vertex();
    g.add_edge(prev, x);
    prev = x;
  }
  g.add_edge(prev, 3);
  auto k = kernelize(g, 3);
  ASSERT_EQ(k.verdict, KernelVerdict::Reduced);
  EXPECT_EQ(k.h.order(), 9);
  EXPECT_EQ(k.vertex_map, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8}));
}

TEST(Kernelize, DropsPathComponentsAndIsolatedVertices) {
  Graph g = disjoint_union(disjoint_union(path_graph(4), Graph(1)), subdivide(star(3), 2));
  auto r = kernelize(g, 3);
  ASSERT_EQ(r.verdict, KernelVerdict::Reduced);
  ASSERT_EQ(r.dropped_paths.size(), 2u);
  EXPECT_EQ(r.dropped_paths[0], (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(r.dropped_paths[1], (std::vector<int>{4}));
  EXPECT_EQ(r.h, subdivide(star(3), 2));
  for (int v = 0; v < r.h.order(); ++v) EXPECT_EQ(r.vertex_map[v], v + 5);
}

TEST(Kernelize, IdempotentAndWithinSizeBound) {
  std::mt19937_64 rng(21);
  int reduced = 0;
  for (int it = 0; it < 600; ++it) {
    int k = 2 + it % 4;
    Graph g = random_graph(4 + it % 5, 0.35, rng);
    g = subdivide(g, static_cast<int>(rng() % 12));
    if (it % 5 == 0) g = disjoint_union(g, cycle_graph(3 + static_cast<int>(rng() % 30)));
    auto r = kernelize(g, k);
    if (r.verdict != KernelVerdict::Reduced) {
      EXPECT_EQ(r.h, rejection_sentinel(k));
      continue;
    }
    ++reduced;
    EXPECT_LE(r.h.order(), vertex_bound_with_cycles(k));
    EXPECT_LE(r.h.size(), vertex_bound_with_cycles(k) + 2 * (k * k - k));
    auto again = kernelize(r.h, k);
    EXPECT_EQ(again.verdict, KernelVerdict::Reduced);
    EXPECT_EQ(again.h, r.h);
    // vertex map is increasing and lands on G vertices
    for (size_t i = 0; i + 1 < r.vertex_map.size(); ++i) EXPECT_LT(r.vertex_map[i], r.vertex_map[i + 1]);
    // contracted graph has the same branch structure
    auto before = straight_structure(g), after = straight_structure(r.h);
    EXPECT_EQ(before.cycles.size(), after.cycles.size());
    EXPECT_EQ(degree_profile(r.h).v3plus.size(), degree_profile(g).v3plus.size());
  }
  EXPECT_GT(reduced, 100);
}

TEST(Kernelize, LinearTimeOnLargeInputs) {
  // rejection path: a subdivided 500x500 grid has about 10^6 edges
  Graph big = subdivide(grid(500, 500), 1);
  ASSERT_GT(big.size(), 990000);
  auto t0 = std::chrono::steady_clock::now();
  auto r = kernelize(big, 3);
  double rejected_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(r.verdict, KernelVerdict::RejectedByCounts);

  // contraction path: K4 with every edge subdivided 160000 times
  Graph k4 = subdivide(complete_graph(4), 160000);
  t0 = std::chrono::steady_clock::now();
  auto c = kernelize(k4, 4);
  double reduced_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(c.verdict, KernelVerdict::Reduced);
  EXPECT_EQ(c.h.order(), 4 + 6 * 6);
  EXPECT_LT(rejected_s, 10.0);
  EXPECT_LT(reduced_s, 10.0);
}
