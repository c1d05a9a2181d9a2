#include <gtest/gtest.h>

#include <set>

#include "netcensus/common.hpp"
#include "netcensus/graphlet.hpp"
#include "oracles.hpp"

using namespace netcensus;

namespace {

std::vector<NodeId> names(std::size_t n) {
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
  return ids;
}

}  // namespace

TEST(GraphletCatalog, ThirtyGraphletsSeventyThreeOrbits) {
  const auto& cat = graphletCatalog();
  ASSERT_EQ(cat.size(), 30u);
  std::set<int> orbits;
  for (const auto& g : cat) {
    EXPECT_EQ(int(g.orbits.size()), g.nodes);
    orbits.insert(g.orbits.begin(), g.orbits.end());
  }
  EXPECT_EQ(orbits.size(), 73u);
  EXPECT_EQ(*orbits.begin(), 0);
  EXPECT_EQ(*orbits.rbegin(), 72);
  EXPECT_EQ(orbitCountFor(4), 15);
  EXPECT_EQ(orbitCountFor(5), 73);
}

TEST(Gdv, PathOnFourNodes) {
  const UndirectedGraph g(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto m = computeGdv(g, names(4), 4, 1);
  EXPECT_EQ(m.column(0), (std::vector<std::uint64_t>{1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(m.column(1), (std::vector<std::uint64_t>{2, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Gdv, StarAndCliqueOrbits) {
  const UndirectedGraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto s = computeGdv(star, names(4), 4, 1);
  EXPECT_EQ(s.at(7, 0), 1u);
  EXPECT_EQ(s.at(6, 1), 1u);
  EXPECT_EQ(s.at(2, 0), 3u);
  const UndirectedGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto k = computeGdv(k4, names(4), 4, 1);
  for (std::size_t v = 0; v < 4; ++v) {
    EXPECT_EQ(k.at(14, v), 1u);
    EXPECT_EQ(k.at(3, v), 3u);
  }
}

TEST(Gdv, MatchesSubsetOracleAtSizeFive) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 5 + int(seed % 6);
    const UndirectedGraph g(n, oracle::randomUndirectedEdges(n, 0.2 + 0.05 * double(seed % 8), seed));
    EXPECT_EQ(computeGdv(g, names(n), 5, 1).values, oracle::subsetGdv(g, 5)) << "seed " << seed;
  }
}

TEST(Gdv, MatchesSubsetOracleAtSizeFour) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 8 + int(seed % 10);
    const UndirectedGraph g(n, oracle::randomUndirectedEdges(n, 0.15 + 0.04 * double(seed % 9), 100 + seed));
    EXPECT_EQ(computeGdv(g, names(n), 4, 2).values, oracle::subsetGdv(g, 4)) << "seed " << seed;
  }
}

TEST(Gdv, OrbitZeroIsDegree) {
  const UndirectedGraph g(30, oracle::randomUndirectedEdges(30, 0.2, 4));
  const auto m = computeGdv(g, names(30), 4);
  for (std::size_t v = 0; v < 30; ++v) EXPECT_EQ(m.at(0, v), std::uint64_t(g.degree(int(v))));
}

TEST(Gdv, SnapshotIgnoresDirection) {
  const auto d = Snapshot::fromEdges(0, {0, 1}, {{"a", "b"}, {"b", "a"}, {"c", "b"}});
  const auto m = computeGdv(d, 4);
  EXPECT_EQ(m.nodeIds, (std::vector<NodeId>{"a", "b", "c"}));
  EXPECT_EQ(m.at(0, 1), 2u);
  EXPECT_EQ(m.at(2, 1), 1u);
}

TEST(Gdv, RejectsUnsupportedSize) {
  const UndirectedGraph g(3, {{0, 1}});
  EXPECT_THROW(computeGdv(g, names(3), 6), InvalidArgument);
  EXPECT_THROW(computeGdv(g, names(3), 1), InvalidArgument);
}

TEST(Gdv, CosineSimilarityOfColumns) {
  const UndirectedGraph g(5, {{0, 1}, {2, 3}});
  const auto m = computeGdv(g, names(5), 4);
  EXPECT_DOUBLE_EQ(gdvSimilarityColumns(m, 0, 2), 1.0);
  EXPECT_DOUBLE_EQ(gdvSimilarityColumns(m, 4, 4), 1.0);
  EXPECT_DOUBLE_EQ(gdvSimilarityColumns(m, 0, 4), 0.0);
}
