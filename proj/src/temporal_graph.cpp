#include "netcensus/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <string_view>

#include "netcensus/common.hpp"

namespace netcensus {
namespace {

std::vector<std::string_view> splitRow(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  const auto notSpace = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '"'; };
  while (!s.empty() && !notSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && !notSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<Timestamp> parseTimestamp(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  Timestamp value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec == std::errc() && ptr == field.data() + field.size()) return value;
  double real = 0;
  auto [rptr, rec] = std::from_chars(field.data(), field.data() + field.size(), real);
  if (rec == std::errc() && rptr == field.data() + field.size() && std::isfinite(real) &&
      std::abs(real) < 9.0e18)
    return static_cast<Timestamp>(std::floor(real));
  return std::nullopt;
}

}  // namespace

TemporalEdgeList parseEdgeList(std::istream& in, const EdgeListFormat& format) {
  const int maxColumn =
      std::max({format.sourceColumn, format.targetColumn, format.timestampColumn});
  if (format.sourceColumn < 0 || format.targetColumn < 0 || format.timestampColumn < 0)
    throw InvalidArgument("column indices must be non-negative");

  TemporalEdgeList result;
  std::vector<std::string> header;
  std::string line;
  bool firstRow = true;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty() || view.front() == '#' || view.front() == '%') continue;

    const auto fields = splitRow(view, format.delimiter);
    const bool isFirst = firstRow;
    firstRow = false;
    if (isFirst && format.header != HeaderMode::Absent) {
      const bool looksLikeHeader =
          static_cast<int>(fields.size()) > format.timestampColumn &&
          !parseTimestamp(fields[format.timestampColumn]).has_value();
      if (format.header == HeaderMode::Present || looksLikeHeader) {
        for (auto f : fields) header.emplace_back(trim(f));
        result.headerSkipped = true;
        continue;
      }
    }

    if (static_cast<int>(fields.size()) <= maxColumn) {
      ++result.malformedRows;
      continue;
    }
    const auto source = trim(fields[format.sourceColumn]);
    const auto target = trim(fields[format.targetColumn]);
    const auto ts = parseTimestamp(fields[format.timestampColumn]);
    if (source.empty() || target.empty() || !ts || *ts < 0) {
      ++result.malformedRows;
      continue;
    }
    TemporalEdge edge{std::string(source), std::string(target), *ts, {}};
    for (int c = 0; c < static_cast<int>(fields.size()); ++c) {
      if (c == format.sourceColumn || c == format.targetColumn || c == format.timestampColumn)
        continue;
      const std::string key =
          c < static_cast<int>(header.size()) ? header[c] : "col" + std::to_string(c);
      edge.attributes.emplace(key, std::string(trim(fields[c])));
    }
    result.edges.push_back(std::move(edge));
  }
  if (result.edges.empty())
    throw InvalidArgument("zero valid rows (" + std::to_string(result.malformedRows) +
                          " malformed)");
  return result;
}

TemporalEdgeList ingest(const std::string& path, const EdgeListFormat& format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read edge list: " + path);
  return parseEdgeList(in, format);
}

// ---------------------------------------------------------------------------

Snapshot Snapshot::fromEdges(int index, Interval interval,
                             const std::vector<std::pair<NodeId, NodeId>>& edges,
                             const std::vector<NodeId>& extraNodes) {
  std::set<NodeId> idSet(extraNodes.begin(), extraNodes.end());
  for (const auto& [s, t] : edges) {
    if (s == t) continue;
    idSet.insert(s);
    idSet.insert(t);
  }
  std::vector<NodeId> ids(idSet.begin(), idSet.end());
  std::vector<Arc> arcs;
  arcs.reserve(edges.size());
  const auto pos = [&ids](const NodeId& id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  for (const auto& [s, t] : edges)
    if (s != t) arcs.emplace_back(pos(s), pos(t));
  return fromArcs(index, interval, std::move(ids), std::move(arcs));
}

Snapshot Snapshot::fromArcs(int index, Interval interval, std::vector<NodeId> nodeIds,
                            std::vector<Arc> arcs) {
  if (!std::is_sorted(nodeIds.begin(), nodeIds.end()) ||
      std::adjacent_find(nodeIds.begin(), nodeIds.end()) != nodeIds.end())
    throw InvalidArgument("snapshot node ids must be sorted and unique");
  Snapshot g;
  g.index_ = index;
  g.interval_ = interval;
  g.nodes_ = std::make_shared<const std::vector<NodeId>>(std::move(nodeIds));
  g.arcs_ = std::move(arcs);
  g.buildAdjacency();
  return g;
}

Snapshot Snapshot::withArcs(std::vector<Arc> arcs) const {
  Snapshot g;
  g.index_ = index_;
  g.interval_ = interval_;
  g.nodes_ = nodes_;
  g.arcs_ = std::move(arcs);
  g.buildAdjacency();
  return g;
}

void Snapshot::buildAdjacency() {
  const int n = static_cast<int>(nodeCount());
  for (const auto& [u, v] : arcs_)
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidArgument("arc endpoint outside node range");
  std::erase_if(arcs_, [](const Arc& a) { return a.first == a.second; });
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

  outOffsets_.assign(n + 1, 0);
  inOffsets_.assign(n + 1, 0);
  for (const auto& [u, v] : arcs_) {
    ++outOffsets_[u + 1];
    ++inOffsets_[v + 1];
  }
  for (int i = 0; i < n; ++i) {
    outOffsets_[i + 1] += outOffsets_[i];
    inOffsets_[i + 1] += inOffsets_[i];
  }
  outTargets_.resize(arcs_.size());
  inSources_.resize(arcs_.size());
  std::vector<int> outFill(outOffsets_.begin(), outOffsets_.end() - 1);
  std::vector<int> inFill(inOffsets_.begin(), inOffsets_.end() - 1);
  // arcs_ is sorted by (source, target), so out-lists come out sorted; in-lists
  // are filled in source order and therefore sorted too.
  for (const auto& [u, v] : arcs_) {
    outTargets_[outFill[u]++] = v;
    inSources_[inFill[v]++] = u;
  }
}

const std::vector<NodeId>& Snapshot::nodes() const {
  static const std::vector<NodeId> kEmpty;
  return nodes_ ? *nodes_ : kEmpty;
}

std::span<const int> Snapshot::outNeighbors(int v) const {
  return {outTargets_.data() + outOffsets_[v],
          static_cast<std::size_t>(outOffsets_[v + 1] - outOffsets_[v])};
}

std::span<const int> Snapshot::inNeighbors(int v) const {
  return {inSources_.data() + inOffsets_[v],
          static_cast<std::size_t>(inOffsets_[v + 1] - inOffsets_[v])};
}

bool Snapshot::hasArc(int u, int v) const {
  const auto out = outNeighbors(u);
  return std::binary_search(out.begin(), out.end(), v);
}

std::optional<int> Snapshot::positionOf(const NodeId& id) const {
  const auto& ids = nodes();
  const auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - ids.begin());
}

std::vector<std::pair<NodeId, NodeId>> Snapshot::edgeIds() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(arcs_.size());
  const auto& ids = nodes();
  for (const auto& [u, v] : arcs_) out.emplace_back(ids[u], ids[v]);
  return out;
}

bool Snapshot::sameTopology(const Snapshot& other) const {
  return nodes() == other.nodes() && arcs_ == other.arcs_;
}

DegreeSignature degreeSignature(const Snapshot& g) {
  DegreeSignature sig;
  const int n = static_cast<int>(g.nodeCount());
  sig.inDegrees.reserve(n);
  sig.outDegrees.reserve(n);
  for (int v = 0; v < n; ++v) {
    sig.inDegrees.push_back(g.inDegree(v));
    sig.outDegrees.push_back(g.outDegree(v));
  }
  std::sort(sig.inDegrees.begin(), sig.inDegrees.end());
  std::sort(sig.outDegrees.begin(), sig.outDegrees.end());
  return sig;
}

// ---------------------------------------------------------------------------

std::size_t DynamicNetwork::binOf(Timestamp t) const {
  if (t < minTimestamp || binWidth <= 0) throw InvalidArgument("timestamp before network start");
  return static_cast<std::size_t>((t - minTimestamp) / binWidth);
}

DynamicNetwork discretize(const TemporalEdgeList& edges, Timestamp binWidth, std::string id) {
  if (binWidth <= 0) throw InvalidArgument("binWidth must be positive");
  if (edges.edges.empty()) throw InvalidArgument("edge list is empty");

  DynamicNetwork dn;
  dn.id = std::move(id);
  dn.binWidth = binWidth;
  const auto [lo, hi] = std::minmax_element(
      edges.edges.begin(), edges.edges.end(),
      [](const TemporalEdge& a, const TemporalEdge& b) { return a.timestamp < b.timestamp; });
  dn.minTimestamp = lo->timestamp;
  dn.maxTimestamp = hi->timestamp;

  const std::size_t bins = dn.binOf(dn.maxTimestamp) + 1;
  std::vector<std::vector<std::pair<NodeId, NodeId>>> perBin(bins);
  std::set<NodeId> global;
  for (const auto& e : edges.edges) {
    if (e.source == e.target) continue;
    perBin[dn.binOf(e.timestamp)].emplace_back(e.source, e.target);
    global.insert(e.source);
    global.insert(e.target);
  }
  dn.snapshots.reserve(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const Timestamp start = dn.minTimestamp + static_cast<Timestamp>(k) * binWidth;
    dn.snapshots.push_back(
        Snapshot::fromEdges(static_cast<int>(k), Interval{start, start + binWidth}, perBin[k]));
  }
  dn.globalNodes.assign(global.begin(), global.end());
  return dn;
}

Snapshot supergraph(const DynamicNetwork& dn) {
  if (dn.snapshots.empty()) throw InvalidArgument("dynamic network has no snapshots");
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::set<NodeId> ids;
  for (const auto& s : dn.snapshots) {
    const auto& nodes = s.nodes();
    ids.insert(nodes.begin(), nodes.end());
    for (const auto& [u, v] : s.arcs()) edges.emplace_back(nodes[u], nodes[v]);
  }
  const Interval span{dn.snapshots.front().interval().start, dn.snapshots.back().interval().end};
  return Snapshot::fromEdges(Snapshot::kSupergraphIndex, span, edges,
                             std::vector<NodeId>(ids.begin(), ids.end()));
}

}  // namespace netcensus
