#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "netcensus/null_model.hpp"
#include "netcensus/triad_census.hpp"
#include "oracles.hpp"

using namespace netcensus;

namespace {

Snapshot triple(TriadCode code) {
  std::vector<Arc> arcs;
  const int from[6] = {0, 1, 0, 2, 1, 2};
  const int to[6] = {1, 0, 2, 0, 2, 1};
  for (int b = 0; b < 6; ++b)
    if ((code >> b) & 1u) arcs.push_back({from[b], to[b]});
  return Snapshot::fromArcs(0, {0, 1}, {"a", "b", "c"}, arcs);
}

}  // namespace

TEST(TriadClassification, AllSixtyFourCodesMatchManRules) {
  std::set<int> classes;
  for (TriadCode code = 0; code < 64; ++code) {
    const int cls = classifyTriad(code);
    const std::string expected = oracle::manLabel(triple(code), 0, 1, 2);
    if (cls == 0) {
      EXPECT_TRUE(expected == "003" || expected == "012" || expected == "102") << code;
    } else {
      EXPECT_EQ(std::string(kTriadLabels[cls - 1]), expected) << code;
      classes.insert(cls);
    }
  }
  EXPECT_EQ(classes.size(), 13u);
}

TEST(TriadClassification, ClassSizesMatchLabelledCounts) {
  // labelled digraphs per class on 3 nodes
  const std::map<std::string, int> expected = {
      {"021D", 3}, {"021U", 3}, {"021C", 6}, {"111D", 6}, {"111U", 6}, {"030T", 6}, {"030C", 2},
      {"201", 3},  {"120D", 3}, {"120U", 3}, {"120C", 6}, {"210", 6},  {"300", 1}};
  std::map<std::string, int> seen;
  for (TriadCode code = 0; code < 64; ++code)
    if (int cls = classifyTriad(code)) ++seen[std::string(kTriadLabels[cls - 1])];
  EXPECT_EQ(seen, expected);
}

TEST(TriadClassification, RejectsRepeatedNodes) {
  const auto g = triple(0b111111);
  EXPECT_THROW(classifyTriad(g, 0, 0, 1), InvalidArgument);
  EXPECT_THROW(classifyTriad(64), InvalidArgument);
}

TEST(TriadCensus, MatchesBruteForceOnRandomDigraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 3 + int(seed % 20);
    const double p = 0.03 + 0.45 * double(seed % 7) / 6.0;
    const auto g = oracle::randomDigraph(n, p, seed);
    EXPECT_EQ(countTriads(g), oracle::bruteForceCensus(g)) << "seed " << seed;
  }
}

TEST(TriadCensus, InvariantUnderNodeRelabelling) {
  const auto g = oracle::randomDigraph(15, 0.2, 99);
  std::vector<NodeId> ids = g.nodes();
  std::vector<std::pair<NodeId, NodeId>> renamed;
  for (const auto& [u, v] : g.arcs()) renamed.push_back({"z" + ids[g.nodeCount() - 1 - u], "z" + ids[g.nodeCount() - 1 - v]});
  EXPECT_EQ(countTriads(g), countTriads(Snapshot::fromEdges(0, {0, 1}, renamed)));
}

TEST(TriadCensus, ConnectedTriplesAreCounted) {
  // star with 4 leaves, all out-arcs: C(4,2) = 6 triples of type 021D
  const auto g = Snapshot::fromEdges(0, {0, 1}, {{"h", "a"}, {"h", "b"}, {"h", "c"}, {"h", "d"}});
  const auto c = countTriads(g);
  EXPECT_EQ(c[0], 6u);
  std::uint64_t total = 0;
  for (auto x : c) total += x;
  EXPECT_EQ(total, 6u);
}

TEST(SignificanceProfile, UnitNormOrZero) {
  const auto sp = significanceProfile({3, 4});
  EXPECT_DOUBLE_EQ(sp[0], 0.6);
  EXPECT_DOUBLE_EQ(sp[1], 0.8);
  const auto zero = significanceProfile({});
  for (double x : zero) EXPECT_EQ(x, 0.0);
}

TEST(SignificanceProfile, ZeroStdGivesZeroZ) {
  const auto g = oracle::randomDigraph(10, 0.3, 5);
  NullEnsembleStats s;
  s.degreeSignature = degreeSignature(g);
  s.sampleCount = 1;
  const auto real = countTriads(g);
  for (std::size_t i = 0; i < kTriadClasses; ++i) s.mean[i] = double(real[i]) + 1.0;
  s.stddev[2] = 2.0;
  const auto cv = computeCensus(g, s);
  for (std::size_t i = 0; i < kTriadClasses; ++i) {
    if (i == 2) EXPECT_DOUBLE_EQ(cv.z[i], -0.5);
    else EXPECT_EQ(cv.z[i], 0.0);
  }
  EXPECT_DOUBLE_EQ(cv.sp[2], -1.0);
}

TEST(SignificanceProfile, RejectsEnsembleForOtherDegrees) {
  const auto g = oracle::randomDigraph(10, 0.3, 5);
  const auto h = oracle::randomDigraph(10, 0.3, 6);
  const auto s = ensembleStats(h, 3, 1);
  EXPECT_THROW(computeCensus(g, s), Error);
}

TEST(CensusMatrix, SingleNullModelGivesZeroProfiles) {
  TemporalEdgeList l;
  for (int t = 0; t < 3; ++t)
    for (const auto& [a, b] : oracle::plantedArcs(oracle::Regime::Cycle, 12, 6, 5, t))
      l.edges.push_back({a, b, t * 10, {}});
  const auto m = buildCensusMatrix(discretize(l, 10), 1, 3);
  ASSERT_EQ(m.values.size(), 13u * 3u);
  for (double v : m.values) EXPECT_EQ(v, 0.0);
}

TEST(CensusMatrix, ShapeLabelsAndDeterminism) {
  TemporalEdgeList l;
  for (int t = 0; t < 4; ++t)
    for (const auto& [a, b] : oracle::plantedArcs(oracle::Regime::FeedForward, 15, 8, 6, 10 + t))
      l.edges.push_back({a, b, t, {}});
  const auto dn = discretize(l, 1);
  CensusOptions o;
  o.nullCount = 20;
  o.seed = 11;
  o.threads = 1;
  const auto a = buildCensus(dn, o);
  o.threads = 3;
  const auto b = buildCensus(dn, o);
  EXPECT_EQ(a.matrix.values, b.matrix.values);
  EXPECT_EQ(a.matrix.rows(), 13u);
  EXPECT_EQ(a.matrix.cols(), 4u);
  EXPECT_EQ(a.matrix.motifs[7], "201");
  for (std::size_t t = 0; t < 4; ++t) {
    double n2 = 0;
    for (double x : a.matrix.column(t)) n2 += x * x;
    EXPECT_NEAR(n2, 1.0, 1e-9);
  }
}

TEST(CensusMatrix, PlantedFeedForwardIsOverRepresented) {
  const auto arcs = oracle::plantedArcs(oracle::Regime::FeedForward, 40, 30, 10, 3);
  const auto g = Snapshot::fromEdges(0, {0, 1}, arcs);
  const auto real = oracle::bruteForceCensus(g);
  const auto cv = computeCensus(g, real, ensembleStats(g, 50, 9));
  EXPECT_GT(cv.sp[5], 0.0);  // 030T
  EXPECT_LT(cv.sp[6], cv.sp[5]);
}

TEST(CensusMatrix, PlantedCyclesAreOverRepresented) {
  const auto arcs = oracle::plantedArcs(oracle::Regime::Cycle, 40, 30, 10, 4);
  const auto g = Snapshot::fromEdges(0, {0, 1}, arcs);
  const auto cv = computeCensus(g, oracle::bruteForceCensus(g), ensembleStats(g, 50, 9));
  EXPECT_GT(cv.sp[6], 0.0);  // 030C
  EXPECT_GT(cv.sp[6], cv.sp[5]);
}
