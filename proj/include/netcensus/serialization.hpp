#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "netcensus/cluster_reorder.hpp"
#include "netcensus/graph_metrics.hpp"
#include "netcensus/graphlet.hpp"
#include "netcensus/null_model.hpp"
#include "netcensus/temporal_graph.hpp"
#include "netcensus/triad_census.hpp"

namespace netcensus {

using Json = nlohmann::json;

// Describes where a dataset comes from and how to bin it.
struct DatasetManifest {
  std::string id;
  std::string path;
  EdgeListFormat format;
  Timestamp binWidth = 86400;
};

Json toJson(const DatasetManifest& m);
DatasetManifest manifestFromJson(const Json& j);
DatasetManifest loadManifest(const std::string& path);

Json toJson(const Snapshot& g);
Snapshot snapshotFromJson(const Json& j);
Json toJson(const DynamicNetwork& dn);
DynamicNetwork networkFromJson(const Json& j);

// {motifs, times, values} with values row-major.
Json toJson(const CensusMatrix& m);
CensusMatrix censusMatrixFromJson(const Json& j);
std::string toCsv(const CensusMatrix& m);

Json toJson(const CensusVector& v);
CensusVector censusVectorFromJson(const Json& j);

// {orbits, maxGraphletSize, nodes, values} with values orbit-major.
Json toJson(const GdvMatrix& m);
GdvMatrix gdvFromJson(const Json& j);
std::string toCsv(const GdvMatrix& m);

Json toJson(const ClusterAssignment& c);
Json toJson(const ViewState& s);
ViewState viewStateFromJson(const Json& j);

Json toJson(const NetworkMetrics& m);
NetworkMetrics networkMetricsFromJson(const Json& j);
Json toJson(const CommunityPartition& p, const std::vector<NodeId>& ids);

}  // namespace netcensus
