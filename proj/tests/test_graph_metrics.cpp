#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "netcensus/common.hpp"
#include "netcensus/graph_metrics.hpp"
#include "oracles.hpp"

using namespace netcensus;

namespace {

std::vector<NodeId> names(std::size_t n) {
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(100 + i));
  return ids;
}

// Direct sum over node pairs: Q = 1/2m sum_ij (A_ij - k_i k_j / 2m) [c_i = c_j].
double pairModularity(const UndirectedGraph& g, const std::vector<int>& c) {
  const double m2 = 2.0 * double(g.edgeCount());
  if (m2 == 0) return 0;
  double q = 0;
  for (int i = 0; i < int(g.nodeCount()); ++i)
    for (int j = 0; j < int(g.nodeCount()); ++j)
      if (c[i] == c[j]) q += (g.adjacent(i, j) ? 1.0 : 0.0) - g.degree(i) * double(g.degree(j)) / m2;
  return q / m2;
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

TEST(NetworkMetrics, TriangleWithPendant) {
  const auto g = Snapshot::fromEdges(0, {0, 1}, {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}});
  const auto m = networkMetrics(g);
  EXPECT_EQ(m.nodeCount, 4u);
  EXPECT_EQ(m.edgeCount, 4u);
  // local: a = 1, b = 1, c = 1/3, d = 0
  EXPECT_NEAR(m.avgClusteringCoefficient, (1 + 1 + 1.0 / 3) / 4, 1e-12);
}

TEST(PageRank, MatchesExactSolveAndSumsToOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::randomDigraph(10 + int(seed) * 3, 0.08 + 0.02 * double(seed % 4), seed);
    const auto pr = nodeMetrics(g).pagerank;
    const auto exact = oracle::exactPagerank(g, 0.85L);
    EXPECT_NEAR(std::accumulate(pr.begin(), pr.end(), 0.0), 1.0, 1e-9);
    for (std::size_t v = 0; v < pr.size(); ++v) EXPECT_NEAR(pr[v], double(exact[v]), 1e-6);
  }
}

TEST(PageRank, DegreeCentralityNormalised) {
  const auto g = Snapshot::fromEdges(0, {0, 1}, {{"a", "b"}, {"a", "c"}, {"b", "a"}});
  const auto m = nodeMetrics(g);
  EXPECT_DOUBLE_EQ(m.degreeCentrality[0], 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(m.degreeCentrality[2], 1.0 / 4.0);
}

TEST(Modularity, AgreesWithPairwiseDefinition) {
  const UndirectedGraph g(12, oracle::randomUndirectedEdges(12, 0.3, 9));
  std::vector<int> c(12);
  for (int i = 0; i < 12; ++i) c[i] = i % 3;
  EXPECT_NEAR(modularity(g, c), pairModularity(g, c), 1e-12);
  EXPECT_EQ(modularity(UndirectedGraph(3, {}), {0, 1, 2}), 0.0);
}

TEST(Communities, TwoBridgedCliques) {
  const auto g = oracle::twoCliques(5, true);
  const auto p = communities(g);
  ASSERT_EQ(p.communityCount(), 2);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(p.assignment[i], 0);
    EXPECT_EQ(p.assignment[i + 5], 1);
  }
  // best of all 2-partitions, by exhaustive search
  double best = -1;
  for (unsigned mask = 1; mask < (1u << 10) - 1; ++mask) {
    std::vector<int> c(10);
    for (int i = 0; i < 10; ++i) c[i] = (mask >> i) & 1;
    best = std::max(best, pairModularity(g, c));
  }
  EXPECT_NEAR(p.modularity, best, 1e-12);
}

TEST(Communities, NeverBelowSingletonStart) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const UndirectedGraph g(25, oracle::randomUndirectedEdges(25, 0.15, seed));
    const auto p = communities(g);
    std::vector<int> singletons(25);
    std::iota(singletons.begin(), singletons.end(), 0);
    EXPECT_GE(p.modularity + 1e-12, modularity(g, singletons));
    EXPECT_NEAR(p.modularity, pairModularity(g, p.assignment), 1e-12);
  }
}

TEST(ForceLayout, SeedDeterministic) {
  const UndirectedGraph g(20, oracle::randomUndirectedEdges(20, 0.2, 1));
  const auto a = forceLayout(g, names(20), {200, 7});
  const auto b = forceLayout(g, names(20), {200, 7});
  const auto c = forceLayout(g, names(20), {200, 8});
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].y, b[i].y);
    differs |= a[i].x != c[i].x;
  }
  EXPECT_TRUE(differs);
}

TEST(ForceLayout, SingleNodeAtOrigin) {
  const auto p = forceLayout(UndirectedGraph(1, {}), {"only"});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].x, 0.0);
  EXPECT_EQ(p[0].y, 0.0);
}

TEST(ForceLayout, DisjointCliquesSeparate) {
  const auto g = oracle::twoCliques(10, false);
  const auto p = forceLayout(g, names(20));
  double diameter = 0, gap = 1e300;
  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j) {
      if ((i < 10) == (j < 10)) diameter = std::max(diameter, dist(p[i], p[j]));
      else gap = std::min(gap, dist(p[i], p[j]));
    }
  EXPECT_GT(gap, diameter);
}

TEST(ForceLayout, MovementSettles) {
  const UndirectedGraph g(30, oracle::randomUndirectedEdges(30, 0.15, 4));
  LayoutTrace trace;
  forceLayout(g, names(30), {}, &trace);
  ASSERT_EQ(trace.meanDisplacement.size(), 500u);
  const double early = std::accumulate(trace.meanDisplacement.begin(), trace.meanDisplacement.begin() + 20, 0.0);
  const double late = std::accumulate(trace.meanDisplacement.end() - 20, trace.meanDisplacement.end(), 0.0);
  EXPECT_LT(late, early);
}
