#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netcensus/graphlet.hpp"
#include "netcensus/triad_census.hpp"

namespace netcensus {

// Row-major real matrix with axis labels; the common shape behind census and
// GDV views.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<std::string> rowLabels;
  std::vector<std::string> colLabels;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::vector<double> column(std::size_t c) const;
  std::vector<double> row(std::size_t r) const;
  std::vector<std::vector<double>> columns() const;
};

DenseMatrix toDense(const CensusMatrix& m);
DenseMatrix toDense(const GdvMatrix& m);

enum class DistanceMetric { Cosine, Euclidean };

DistanceMetric parseDistanceMetric(std::string_view name);
std::string_view metricName(DistanceMetric metric);

// Marks pairs that must never be linked (temporal filtering). Any distance
// >= kUnlinked is treated as infinite by the clustering.
inline constexpr double kUnlinked = std::numeric_limits<double>::max();

struct DistanceMatrix {
  std::size_t size = 0;
  std::vector<double> values;  // size x size, symmetric, zero diagonal
  std::string metric = "cosine-distance";

  double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * size + j]; }
};

// d = 1 - cos; both-zero pairs get 0, one-zero pairs get 1.
DistanceMatrix cosineDistanceMatrix(const std::vector<std::vector<double>>& columns);
DistanceMatrix distanceMatrix(const std::vector<std::vector<double>>& columns,
                              DistanceMetric metric = DistanceMetric::Cosine);

// Entries with |times[i] - times[j]| > epsTime become kUnlinked.
DistanceMatrix temporalFilter(const DistanceMatrix& d, std::span<const int> times, int epsTime);

inline constexpr int kNoise = -1;
inline constexpr int kDefaultMinClusterSize = 5;
inline constexpr int kDefaultEpsTime = 10;

struct ClusterAssignment {
  std::vector<int> labels;        // kNoise or 0..clusterCount-1
  std::vector<int> clusterOrder;  // display order of cluster ids
  int minClusterSize = kDefaultMinClusterSize;
  std::optional<int> epsTime;

  int clusterCount() const { return static_cast<int>(clusterOrder.size()); }
  std::size_t noiseCount() const;
};

// HDBSCAN over a precomputed distance matrix: core distances with
// k = minClusterSize (the point itself included), mutual reachability, minimum
// spanning forest, condensed cluster tree and excess-of-mass selection.
// Cluster ids are numbered by their smallest member index.
ClusterAssignment clusterDensity(const DistanceMatrix& d, int minClusterSize = kDefaultMinClusterSize);

// Display transform of a matrix: rowPermutation[k] is the source row shown at
// position k, likewise for columns.
struct ViewState {
  std::vector<std::size_t> rowPermutation;
  std::vector<std::size_t> colPermutation;
  std::optional<ClusterAssignment> clusters;
  std::set<int> collapsed;
};

ViewState identityView(std::size_t rows, std::size_t cols);
bool isPermutation(std::span<const std::size_t> p, std::size_t n);

enum class ColumnOrder { Time, ClusterThenTime, NetworkMetric, NodeMetric };

struct ColumnStrategy {
  ColumnOrder order = ColumnOrder::Time;
  std::vector<double> metric;  // per source column, for the metric orders
};

ColumnOrder parseColumnOrder(std::string_view name);

// Time: ascending `times`. ClusterThenTime: clusters by earliest member time,
// members by time, noise last (also rewrites clusterOrder). Metric orders:
// ascending metric value. All ties fall back to the source index.
ViewState orderColumns(const ViewState& state, const ColumnStrategy& strategy,
                       std::span<const int> times);

enum class RowStatistic { Mean, Median, Min, Max, Variance, Std };

RowStatistic parseRowStatistic(std::string_view name);
std::string_view statisticName(RowStatistic s);
double rowStatistic(std::span<const double> values, RowStatistic s);

// Rows sorted by descending statistic, ties by source row index.
ViewState orderRows(const ViewState& state, RowStatistic statistic, const DenseMatrix& matrix);

inline constexpr std::size_t kCollapsedHead = 3;
inline constexpr std::size_t kCollapsedTail = 3;

struct CollapsedLayout {
  int clusterId = 0;
  std::vector<std::size_t> visibleColumns;  // source columns, display order
  std::size_t hiddenCount = 0;
  // placeholder slot sits after this many visible columns (absent if nothing hidden)
  std::optional<std::size_t> placeholderAfter;
};

// First three and last three members in display order plus a placeholder for
// the rest; clusters with at most six members are shown whole.
CollapsedLayout collapse(const ViewState& state, int clusterId);

std::vector<std::size_t> clusterMembers(const ViewState& state, int clusterId);

}  // namespace netcensus
