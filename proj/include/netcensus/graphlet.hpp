#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netcensus/temporal_graph.hpp"

namespace netcensus {

// Simple undirected graph over positions 0..n-1 with sorted adjacency lists.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(std::size_t n, const std::vector<std::pair<int, int>>& edges);

  std::size_t nodeCount() const { return adjacency_.size(); }
  std::size_t edgeCount() const { return edges_; }
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(int u, int v) const;

 private:
  std::vector<std::vector<int>> adjacency_;
  std::size_t edges_ = 0;
};

// Symmetrized projection: {a,b} present iff a->b or b->a. Node positions are
// kept, so column j of a GDV matrix is snapshot node j.
UndirectedGraph undirect(const Snapshot& g);

// One connected graphlet on 2..5 nodes in the standard orbit numbering
// (orbit 0 = edge, 1-2 = path on 3 nodes, 3 = triangle, 4-14 = 4-node
// graphlets, 15-72 = 5-node graphlets). orbits[i] is the orbit of node i.
struct GraphletSpec {
  int id;
  int nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> orbits;
};

// All 30 connected graphlets on 2..5 nodes, ordered by graphlet id.
const std::vector<GraphletSpec>& graphletCatalog();

int orbitCountFor(int maxGraphletSize);  // 4 -> 15, 5 -> 73

struct GdvMatrix {
  int orbitCount = 0;
  int maxGraphletSize = 0;
  std::vector<NodeId> nodeIds;
  std::vector<std::uint64_t> values;  // orbit-major: values[o * n + v]

  std::size_t nodeCount() const { return nodeIds.size(); }
  std::uint64_t at(int orbit, std::size_t node) const { return values[orbit * nodeCount() + node]; }
  std::vector<std::uint64_t> column(std::size_t node) const;
};

// Orbit counts of connected induced subgraphs with 2..maxSize nodes. Each
// connected node set is enumerated once (ESU) and its orbits are read from a
// table indexed by the set's adjacency bitmask. Edge direction is ignored.
GdvMatrix computeGdv(const UndirectedGraph& g, std::vector<NodeId> nodeIds, int maxSize = 4,
                     unsigned threads = 0);
GdvMatrix computeGdv(const Snapshot& g, int maxSize = 4, unsigned threads = 0);

// Cosine of two GDV columns; 1 when both are zero, 0 when exactly one is.
double gdvSimilarityColumns(const GdvMatrix& m, std::size_t i, std::size_t j);

}  // namespace netcensus
