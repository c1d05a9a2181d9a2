#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "netcensus/null_model.hpp"
#include "oracles.hpp"

using namespace netcensus;

namespace {

std::vector<std::pair<int, int>> labelledDegrees(const Snapshot& g) {
  std::vector<std::pair<int, int>> d;
  for (int v = 0; v < int(g.nodeCount()); ++v) d.push_back({g.inDegree(v), g.outDegree(v)});
  return d;
}

bool simple(const std::vector<Arc>& arcs) {
  std::set<Arc> s;
  for (const auto& a : arcs) {
    if (a.first == a.second || !s.insert(a).second) return false;
  }
  return true;
}

}  // namespace

TEST(EdgeSwap, PreservesLabelledDegreesAndSimplicity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::randomDigraph(20, 0.15, seed);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto r = randomize(g, s);
      EXPECT_EQ(labelledDegrees(r), labelledDegrees(g));
      EXPECT_TRUE(simple(r.arcs()));
      EXPECT_EQ(r.edgeCount(), g.edgeCount());
    }
  }
}

TEST(EdgeSwap, SameSeedSameGraph) {
  const auto g = oracle::randomDigraph(25, 0.1, 3);
  EXPECT_TRUE(randomize(g, 42).sameTopology(randomize(g, 42)));
  EXPECT_FALSE(randomize(g, 42).sameTopology(randomize(g, 43)));
}

TEST(EdgeSwap, SwapIsAnInvolution) {
  EdgeSwapper s({{0, 1}, {2, 3}});
  ASSERT_TRUE(s.trySwap(0, 1));
  EXPECT_EQ(s.arcs(), (std::vector<Arc>{{0, 3}, {2, 1}}));
  ASSERT_TRUE(s.trySwap(0, 1));
  EXPECT_EQ(s.arcs(), (std::vector<Arc>{{0, 1}, {2, 3}}));
}

TEST(EdgeSwap, RejectsLoopsAndParallelArcs) {
  EdgeSwapper loop({{0, 1}, {1, 0}});
  EXPECT_FALSE(loop.trySwap(0, 1));  // would give 0->0 and 1->1
  EdgeSwapper parallel({{0, 1}, {2, 3}, {0, 3}});
  EXPECT_FALSE(parallel.trySwap(0, 1));  // 0->3 exists
  EXPECT_FALSE(parallel.trySwap(1, 1));
  EXPECT_EQ(parallel.arcs(), (std::vector<Arc>{{0, 1}, {2, 3}, {0, 3}}));
}

TEST(EdgeSwap, GraphWithoutValidSwapIsReturnedUnchanged) {
  const auto g = Snapshot::fromEdges(0, {0, 1}, {{"a", "b"}});
  EXPECT_TRUE(randomize(g, 1).sameTopology(g));
}

TEST(NullEnsemble, IndependentOfThreadCount) {
  const auto g = oracle::randomDigraph(18, 0.2, 8);
  NullModelOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = ensembleStats(g, 30, 5, one);
  const auto b = ensembleStats(g, 30, 5, many);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stddev, b.stddev);
  EXPECT_EQ(a.sampleCount, 30u);
  EXPECT_EQ(a.degreeSignature, degreeSignature(g));
}

TEST(NullEnsemble, SingleDrawHasZeroSpread) {
  const auto g = oracle::randomDigraph(12, 0.3, 2);
  const auto s = ensembleStats(g, 1, 5);
  for (double sd : s.stddev) EXPECT_EQ(sd, 0.0);
}

// The swap chain is symmetric, so its stationary law is uniform over the
// graphs reachable from the input by valid swaps. Enumerate that set exactly
// and compare the sampled mean census against it.
TEST(NullEnsemble, MeanMatchesExactReachableSetAverage) {
  const auto g = Snapshot::fromEdges(0, {0, 1},
                                     {{"a", "b"}, {"a", "c"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"}, {"b", "e"}});
  std::set<std::vector<Arc>> seen;
  std::queue<std::vector<Arc>> todo;
  auto canon = [](std::vector<Arc> a) {
    std::sort(a.begin(), a.end());
    return a;
  };
  todo.push(canon(g.arcs()));
  seen.insert(todo.front());
  while (!todo.empty()) {
    const auto cur = todo.front();
    todo.pop();
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = 0; j < cur.size(); ++j) {
        EdgeSwapper s(cur);
        if (!s.trySwap(i, j)) continue;
        auto next = canon(s.release());
        if (seen.insert(next).second) todo.push(next);
      }
  }
  ASSERT_GT(seen.size(), 5u);
  std::array<double, kTriadClasses> exact{};
  for (const auto& arcs : seen) {
    const auto c = oracle::bruteForceCensus(g.withArcs(arcs));
    for (std::size_t k = 0; k < kTriadClasses; ++k) exact[k] += double(c[k]) / double(seen.size());
  }
  NullModelOptions o;
  o.swapFactor = 20;
  const auto stats = ensembleStats(g, 10000, 77, o);
  for (std::size_t k = 0; k < kTriadClasses; ++k) {
    const double se = stats.stddev[k] / std::sqrt(10000.0);
    EXPECT_NEAR(stats.mean[k], exact[k], 5 * se + 1e-9) << kTriadLabels[k];
  }
}
