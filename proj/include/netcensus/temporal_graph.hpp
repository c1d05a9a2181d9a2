#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netcensus {

using NodeId = std::string;
using Timestamp = std::int64_t;

struct TemporalEdge {
  NodeId source;
  NodeId target;
  Timestamp timestamp = 0;
  std::map<std::string, std::string> attributes;
};

struct TemporalEdgeList {
  std::vector<TemporalEdge> edges;  // input order
  std::size_t malformedRows = 0;
  bool headerSkipped = false;
};

enum class HeaderMode { Auto, Present, Absent };

// Column layout of a delimited edge file. A space delimiter splits on any
// run of blanks/tabs. Columns other than the three roles become attributes.
struct EdgeListFormat {
  char delimiter = ',';
  int sourceColumn = 0;
  int targetColumn = 1;
  int timestampColumn = 2;
  HeaderMode header = HeaderMode::Auto;
};

// Parses one delimited text stream. The header is auto-detected when the
// timestamp column of the first row is not numeric. Fractional timestamps are
// floored to whole seconds; negative ones count as malformed.
TemporalEdgeList parseEdgeList(std::istream& in, const EdgeListFormat& format = {});
TemporalEdgeList ingest(const std::string& path, const EdgeListFormat& format = {});

// Half-open time range [start, end).
struct Interval {
  Timestamp start = 0;
  Timestamp end = 0;
  bool operator==(const Interval&) const = default;
};

// Directed arc between two node positions of a snapshot.
using Arc = std::pair<int, int>;

// Simple directed graph for one time bin. Node positions follow the
// lexicographic order of node ids; arcs are unique, sorted and loop-free.
// Immutable once built; copies share the node list.
class Snapshot {
 public:
  static constexpr int kSupergraphIndex = -1;

  Snapshot() = default;

  // Builds from id pairs. Self-loops and duplicates are dropped; the node set
  // is the endpoints of retained arcs plus any `extraNodes`.
  static Snapshot fromEdges(int index, Interval interval,
                            const std::vector<std::pair<NodeId, NodeId>>& edges,
                            const std::vector<NodeId>& extraNodes = {});

  // Builds over positions 0..nodeIds.size()-1; nodeIds must be sorted and unique.
  static Snapshot fromArcs(int index, Interval interval, std::vector<NodeId> nodeIds,
                           std::vector<Arc> arcs);

  // Same node list and metadata, different arc set (used by null models).
  Snapshot withArcs(std::vector<Arc> arcs) const;

  int index() const { return index_; }
  Interval interval() const { return interval_; }
  std::size_t nodeCount() const { return nodes_ ? nodes_->size() : 0; }
  std::size_t edgeCount() const { return arcs_.size(); }
  const std::vector<NodeId>& nodes() const;
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const int> outNeighbors(int v) const;
  std::span<const int> inNeighbors(int v) const;
  int outDegree(int v) const { return outOffsets_[v + 1] - outOffsets_[v]; }
  int inDegree(int v) const { return inOffsets_[v + 1] - inOffsets_[v]; }
  bool hasArc(int u, int v) const;
  std::optional<int> positionOf(const NodeId& id) const;

  std::vector<std::pair<NodeId, NodeId>> edgeIds() const;

  bool sameTopology(const Snapshot& other) const;

 private:
  void buildAdjacency();

  int index_ = 0;
  Interval interval_;
  std::shared_ptr<const std::vector<NodeId>> nodes_;
  std::vector<Arc> arcs_;
  std::vector<int> outOffsets_{0}, outTargets_;
  std::vector<int> inOffsets_{0}, inSources_;
};

// Sorted in- and out-degree sequences; the quantity a configuration-model
// null ensemble must preserve.
struct DegreeSignature {
  std::vector<int> inDegrees;
  std::vector<int> outDegrees;
  bool operator==(const DegreeSignature&) const = default;
};

DegreeSignature degreeSignature(const Snapshot& g);

struct DynamicNetwork {
  std::string id;
  Timestamp binWidth = 0;
  Timestamp minTimestamp = 0;
  Timestamp maxTimestamp = 0;
  std::vector<Snapshot> snapshots;
  std::vector<NodeId> globalNodes;  // sorted union

  std::size_t size() const { return snapshots.size(); }
  // Snapshot position of a timestamp (floor((t - min) / binWidth)).
  std::size_t binOf(Timestamp t) const;
};

// Bins edges into contiguous [min + k*w, min + (k+1)*w) intervals. Empty bins
// become empty snapshots so the time axis has no gaps.
DynamicNetwork discretize(const TemporalEdgeList& edges, Timestamp binWidth,
                          std::string id = "dataset");

// Union of all snapshot nodes and arcs, index = kSupergraphIndex.
Snapshot supergraph(const DynamicNetwork& dn);

}  // namespace netcensus
