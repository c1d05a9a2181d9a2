#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "netcensus/temporal_graph.hpp"

namespace netcensus {

struct NullEnsembleStats;

inline constexpr std::size_t kTriadClasses = 13;

// Connected triad classes in MAN order. Row k-1 of a census matrix is the
// "k-triad":
//
//   k  label  arcs (A,B,C)          k  label  arcs
//   1  021D   A<-B->C               8  201    A<->B<->C
//   2  021U   A->B<-C               9  120D   A<-B->C, A<->C
//   3  021C   A->B->C              10  120U   A->B<-C, A<->C
//   4  111D   A<->B<-C             11  120C   A->B->C, A<->C
//   5  111U   A<->B->C             12  210    A->B<->C, A<->C
//   6  030T   A->B<-C, A->C        13  300    all six arcs
//   7  030C   A<-B<-C, A->C
//
// The disconnected classes 003, 012 and 102 are not part of the census.
inline constexpr std::array<std::string_view, kTriadClasses> kTriadLabels = {
    "021D", "021U", "021C", "111D", "111U", "030T", "030C",
    "201",  "120D", "120U", "120C", "210",  "300"};

using TriadCounts = std::array<std::uint64_t, kTriadClasses>;

// Arcs of a labelled 3-node digraph packed as a 6-bit mask:
// bit 0 = 0->1, 1 = 1->0, 2 = 0->2, 3 = 2->0, 4 = 1->2, 5 = 2->1.
using TriadCode = unsigned;

TriadCode triadCode(bool ab, bool ba, bool ac, bool ca, bool bc, bool cb);

// 0 for disconnected triads, 1..13 for the connected classes above.
int classifyTriad(TriadCode code);

// Classifies the subgraph induced by three distinct node positions of g.
int classifyTriad(const Snapshot& g, int a, int b, int c);

// Counts every unordered node triple whose induced subgraph is connected.
// Runs in O(sum over arcs of neighbourhood size) by enumerating each connected
// triple once from its lowest-ranked connecting dyad.
TriadCounts countTriads(const Snapshot& g);

struct CensusVector {
  std::array<double, kTriadClasses> sp{};
  std::array<double, kTriadClasses> z{};
  TriadCounts counts{};
  int snapshotIndex = 0;
  std::size_t nullEnsembleSize = 0;
};

// z_i = (real_i - mean_i) / std_i with z_i = 0 when std_i = 0; sp = z / |z|,
// or all zeros when |z| = 0. Throws when the ensemble was generated for a
// different degree sequence.
CensusVector computeCensus(const Snapshot& g, const NullEnsembleStats& ensemble);

// Same as above but from precomputed real counts (skips recounting).
CensusVector computeCensus(const Snapshot& g, const TriadCounts& real,
                           const NullEnsembleStats& ensemble);

std::array<double, kTriadClasses> significanceProfile(const std::array<double, kTriadClasses>& z);

// 13 x T matrix of significance-profile values, stored row-major.
struct CensusMatrix {
  std::vector<std::string> motifs;
  std::vector<int> times;
  std::vector<double> values;

  std::size_t rows() const { return motifs.size(); }
  std::size_t cols() const { return times.size(); }
  double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
  std::vector<double> column(std::size_t col) const;
};

struct CensusOptions {
  std::size_t nullCount = 100;
  std::uint64_t seed = 1;
  double swapFactor = 10.0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct CensusRun {
  CensusMatrix matrix;
  std::vector<CensusVector> columns;
};

// Per-snapshot sub-seed is seed ^ snapshot index. Empty snapshots (no arcs)
// get the all-zero profile without drawing a null ensemble.
CensusRun buildCensus(const DynamicNetwork& dn, const CensusOptions& options = {});
CensusMatrix buildCensusMatrix(const DynamicNetwork& dn, std::size_t nullCount,
                               std::uint64_t seed);

}  // namespace netcensus
