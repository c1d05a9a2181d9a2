#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netcensus/graphlet.hpp"
#include "netcensus/temporal_graph.hpp"

namespace netcensus {

struct NetworkMetrics {
  std::size_t edgeCount = 0;
  std::size_t nodeCount = 0;
  double avgClusteringCoefficient = 0.0;
};

// Clustering coefficient on the undirected projection; nodes of degree < 2
// contribute 0 to the average.
NetworkMetrics networkMetrics(const Snapshot& g);
std::vector<double> localClustering(const UndirectedGraph& g);

struct NodeMetrics {
  std::vector<double> pagerank;          // sums to 1
  std::vector<double> degreeCentrality;  // (in + out) / (2 (n - 1))
  std::size_t pagerankIterations = 0;
};

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-8;  // L1 change between iterations
  std::size_t maxIterations = 200;
};

// Power iteration on the directed graph; dangling mass is spread uniformly.
std::vector<double> pagerank(const Snapshot& g, const PageRankOptions& options,
                             std::size_t* iterations = nullptr);
NodeMetrics nodeMetrics(const Snapshot& g, double damping = 0.85);

inline constexpr std::size_t kCommunityNodeThreshold = 100;

struct CommunityPartition {
  std::vector<int> assignment;  // community per node position, ids 0..k-1
  double modularity = 0.0;
  int communityCount() const;
};

// Newman modularity of a partition of an undirected graph (0 when edgeless).
double modularity(const UndirectedGraph& g, const std::vector<int>& assignment);

// Clauset-Newman-Moore greedy agglomeration on the undirected projection:
// repeatedly merge the community pair with the largest positive modularity
// gain; ties go to the smallest (id, id) pair. Communities are renumbered by
// their smallest node position.
CommunityPartition communities(const UndirectedGraph& g);
CommunityPartition communities(const Snapshot& g);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct ForceLayoutOptions {
  std::size_t iterations = 500;
  std::uint64_t seed = 1;
  double scalingRatio = 2.0;  // repulsion coefficient
  double gravity = 1.0;
  double jitterTolerance = 1.0;
  bool linLog = false;
};

struct LayoutTrace {
  // mean node displacement per iteration
  std::vector<double> meanDisplacement;
};

// ForceAtlas2 with exact O(n^2) repulsion: attraction d along edges,
// repulsion k (deg_a + 1)(deg_b + 1) / d, gravity k (deg + 1) towards the
// origin, adaptive global speed from swing/traction. Initial positions come
// from a hash of (node id, seed) onto the unit disk. The final layout is
// translated so its centroid is the origin.
std::vector<Point> forceLayout(const UndirectedGraph& g, const std::vector<NodeId>& ids,
                               const ForceLayoutOptions& options = {},
                               LayoutTrace* trace = nullptr);
std::vector<Point> forceLayout(const Snapshot& g, std::size_t iterations = 500,
                               std::uint64_t seed = 1);

Point initialPosition(const NodeId& id, std::uint64_t seed);

}  // namespace netcensus
