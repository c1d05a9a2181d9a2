#include "netcensus/serialization.hpp"

#include <fstream>
#include <sstream>

#include "netcensus/common.hpp"

namespace netcensus {
namespace {

std::string headerName(HeaderMode mode) {
  switch (mode) {
    case HeaderMode::Present: return "present";
    case HeaderMode::Absent: return "absent";
    default: return "auto";
  }
}

HeaderMode headerFrom(const std::string& s) {
  if (s == "auto") return HeaderMode::Auto;
  if (s == "present") return HeaderMode::Present;
  if (s == "absent") return HeaderMode::Absent;
  throw InvalidArgument("unknown header mode: " + s);
}

template <typename T>
std::vector<T> take(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field: ") + key);
  return j.at(key).get<std::vector<T>>();
}

}  // namespace

Json toJson(const DatasetManifest& m) {
  return {{"id", m.id},
          {"path", m.path},
          {"delimiter", std::string(1, m.format.delimiter)},
          {"binWidth", m.binWidth},
          {"columns",
           {{"source", m.format.sourceColumn},
            {"target", m.format.targetColumn},
            {"timestamp", m.format.timestampColumn}}},
          {"header", headerName(m.format.header)}};
}

DatasetManifest manifestFromJson(const Json& j) {
  DatasetManifest m;
  try {
    m.id = j.at("id").get<std::string>();
    m.path = j.value("path", std::string());
    const auto delim = j.value("delimiter", std::string(","));
    if (delim == "\\t" || delim == "tab") {
      m.format.delimiter = '\t';
    } else if (delim == "space" || delim == "whitespace") {
      m.format.delimiter = ' ';
    } else if (delim.size() == 1) {
      m.format.delimiter = delim[0];
    } else {
      throw InvalidArgument("delimiter must be a single character");
    }
    m.binWidth = j.value("binWidth", Timestamp{86400});
    if (j.contains("columns")) {
      const auto& c = j.at("columns");
      m.format.sourceColumn = c.value("source", 0);
      m.format.targetColumn = c.value("target", 1);
      m.format.timestampColumn = c.value("timestamp", 2);
    }
    m.format.header = headerFrom(j.value("header", std::string("auto")));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad dataset manifest: ") + e.what());
  }
  if (m.id.empty()) throw InvalidArgument("dataset manifest needs an id");
  if (m.binWidth <= 0) throw InvalidArgument("binWidth must be positive");
  return m;
}

DatasetManifest loadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InvalidArgument("manifest is not valid JSON: " + std::string(e.what()));
  }
  return manifestFromJson(j);
}

Json toJson(const Snapshot& g) {
  Json arcs = Json::array();
  for (const auto& [u, v] : g.arcs()) arcs.push_back({u, v});
  return {{"index", g.index()},
          {"interval", {g.interval().start, g.interval().end}},
          {"nodes", g.nodes()},
          {"arcs", std::move(arcs)}};
}

Snapshot snapshotFromJson(const Json& j) {
  std::vector<Arc> arcs;
  for (const auto& a : j.at("arcs")) arcs.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
  const auto& iv = j.at("interval");
  return Snapshot::fromArcs(j.at("index").get<int>(),
                            Interval{iv.at(0).get<Timestamp>(), iv.at(1).get<Timestamp>()},
                            j.at("nodes").get<std::vector<NodeId>>(), std::move(arcs));
}

Json toJson(const DynamicNetwork& dn) {
  Json snaps = Json::array();
  for (const auto& s : dn.snapshots) snaps.push_back(toJson(s));
  return {{"id", dn.id},
          {"binWidth", dn.binWidth},
          {"minTimestamp", dn.minTimestamp},
          {"maxTimestamp", dn.maxTimestamp},
          {"globalNodes", dn.globalNodes},
          {"snapshots", std::move(snaps)}};
}

DynamicNetwork networkFromJson(const Json& j) {
  DynamicNetwork dn;
  dn.id = j.at("id").get<std::string>();
  dn.binWidth = j.at("binWidth").get<Timestamp>();
  dn.minTimestamp = j.at("minTimestamp").get<Timestamp>();
  dn.maxTimestamp = j.at("maxTimestamp").get<Timestamp>();
  dn.globalNodes = j.at("globalNodes").get<std::vector<NodeId>>();
  for (const auto& s : j.at("snapshots")) dn.snapshots.push_back(snapshotFromJson(s));
  return dn;
}

Json toJson(const CensusMatrix& m) {
  return {{"motifs", m.motifs}, {"times", m.times}, {"values", m.values}};
}

CensusMatrix censusMatrixFromJson(const Json& j) {
  CensusMatrix m;
  m.motifs = take<std::string>(j, "motifs");
  m.times = take<int>(j, "times");
  m.values = take<double>(j, "values");
  if (m.values.size() != m.motifs.size() * m.times.size())
    throw InvalidArgument("census values do not match motifs x times");
  return m;
}

std::string toCsv(const CensusMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "motif";
  for (int t : m.times) out << ',' << t;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << m.motifs[r];
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << m.at(r, c);
    out << '\n';
  }
  return out.str();
}

Json toJson(const CensusVector& v) {
  return {{"snapshot", v.snapshotIndex},
          {"sp", v.sp},
          {"z", v.z},
          {"counts", v.counts},
          {"nullEnsembleSize", v.nullEnsembleSize}};
}

CensusVector censusVectorFromJson(const Json& j) {
  CensusVector v;
  v.snapshotIndex = j.at("snapshot").get<int>();
  v.sp = j.at("sp").get<std::array<double, kTriadClasses>>();
  v.z = j.at("z").get<std::array<double, kTriadClasses>>();
  v.counts = j.at("counts").get<TriadCounts>();
  v.nullEnsembleSize = j.at("nullEnsembleSize").get<std::size_t>();
  return v;
}

Json toJson(const GdvMatrix& m) {
  return {{"orbits", m.orbitCount},
          {"maxGraphletSize", m.maxGraphletSize},
          {"nodes", m.nodeIds},
          {"values", m.values}};
}

GdvMatrix gdvFromJson(const Json& j) {
  GdvMatrix m;
  m.orbitCount = j.at("orbits").get<int>();
  m.maxGraphletSize = j.value("maxGraphletSize", m.orbitCount == 73 ? 5 : 4);
  m.nodeIds = take<NodeId>(j, "nodes");
  m.values = take<std::uint64_t>(j, "values");
  if (m.values.size() != static_cast<std::size_t>(m.orbitCount) * m.nodeIds.size())
    throw InvalidArgument("GDV values do not match orbits x nodes");
  return m;
}

std::string toCsv(const GdvMatrix& m) {
  std::ostringstream out;
  out << "orbit";
  for (const auto& id : m.nodeIds) out << ',' << id;
  out << '\n';
  for (int o = 0; o < m.orbitCount; ++o) {
    out << o;
    for (std::size_t v = 0; v < m.nodeCount(); ++v) out << ',' << m.at(o, v);
    out << '\n';
  }
  return out.str();
}

Json toJson(const ClusterAssignment& c) {
  Json j = {{"labels", c.labels},
            {"clusterOrder", c.clusterOrder},
            {"parameters", {{"minClusterSize", c.minClusterSize}}}};
  j["parameters"]["epsTime"] = c.epsTime ? Json(*c.epsTime) : Json(nullptr);
  return j;
}

Json toJson(const ViewState& s) {
  Json j = {{"rowPermutation", s.rowPermutation},
            {"colPermutation", s.colPermutation},
            {"collapsed", s.collapsed}};
  if (s.clusters) {
    j["clusters"] = toJson(*s.clusters);
    j["labels"] = s.clusters->labels;
  } else {
    j["clusters"] = nullptr;
    j["labels"] = nullptr;
  }
  return j;
}

ViewState viewStateFromJson(const Json& j) {
  ViewState s;
  s.rowPermutation = take<std::size_t>(j, "rowPermutation");
  s.colPermutation = take<std::size_t>(j, "colPermutation");
  if (j.contains("collapsed")) s.collapsed = j.at("collapsed").get<std::set<int>>();
  if (j.contains("clusters") && !j.at("clusters").is_null()) {
    const auto& c = j.at("clusters");
    ClusterAssignment a;
    a.labels = take<int>(c, "labels");
    a.clusterOrder = take<int>(c, "clusterOrder");
    const auto& p = c.at("parameters");
    a.minClusterSize = p.value("minClusterSize", kDefaultMinClusterSize);
    if (p.contains("epsTime") && !p.at("epsTime").is_null()) a.epsTime = p.at("epsTime").get<int>();
    s.clusters = std::move(a);
  }
  return s;
}

Json toJson(const NetworkMetrics& m) {
  return {{"edgeCount", m.edgeCount},
          {"nodeCount", m.nodeCount},
          {"avgClusteringCoefficient", m.avgClusteringCoefficient}};
}

NetworkMetrics networkMetricsFromJson(const Json& j) {
  return {j.at("edgeCount").get<std::size_t>(), j.at("nodeCount").get<std::size_t>(),
          j.at("avgClusteringCoefficient").get<double>()};
}

Json toJson(const CommunityPartition& p, const std::vector<NodeId>& ids) {
  Json assignment = Json::object();
  for (std::size_t v = 0; v < ids.size() && v < p.assignment.size(); ++v) assignment[ids[v]] = p.assignment[v];
  return {{"assignment", std::move(assignment)},
          {"count", p.communityCount()},
          {"modularity", p.modularity}};
}

}  // namespace netcensus
