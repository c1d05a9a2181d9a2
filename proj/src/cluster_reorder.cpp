#include "netcensus/cluster_reorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "netcensus/common.hpp"

namespace netcensus {

std::vector<double> DenseMatrix::column(std::size_t c) const {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

std::vector<double> DenseMatrix::row(std::size_t r) const {
  return {values.begin() + r * cols, values.begin() + (r + 1) * cols};
}

std::vector<std::vector<double>> DenseMatrix::columns() const {
  std::vector<std::vector<double>> out;
  out.reserve(cols);
  for (std::size_t c = 0; c < cols; ++c) out.push_back(column(c));
  return out;
}

DenseMatrix toDense(const CensusMatrix& m) {
  DenseMatrix d;
  d.rows = m.rows();
  d.cols = m.cols();
  d.values = m.values;
  d.rowLabels = m.motifs;
  for (int t : m.times) d.colLabels.push_back(std::to_string(t));
  return d;
}

DenseMatrix toDense(const GdvMatrix& m) {
  DenseMatrix d;
  d.rows = static_cast<std::size_t>(m.orbitCount);
  d.cols = m.nodeCount();
  d.values.assign(m.values.begin(), m.values.end());
  for (int o = 0; o < m.orbitCount; ++o) d.rowLabels.push_back("O" + std::to_string(o));
  d.colLabels = m.nodeIds;
  return d;
}

DistanceMetric parseDistanceMetric(std::string_view name) {
  if (name == "cosine" || name == "cosine-distance") return DistanceMetric::Cosine;
  if (name == "euclidean") return DistanceMetric::Euclidean;
  throw InvalidArgument("unknown distance metric: " + std::string(name));
}

std::string_view metricName(DistanceMetric metric) {
  return metric == DistanceMetric::Cosine ? "cosine-distance" : "euclidean";
}

DistanceMatrix distanceMatrix(const std::vector<std::vector<double>>& columns,
                              DistanceMetric metric) {
  const std::size_t k = columns.size();
  for (const auto& c : columns)
    if (c.size() != columns.front().size()) throw InvalidArgument("vector length mismatch");

  DistanceMatrix d;
  d.size = k;
  d.metric = metricName(metric);
  d.values.assign(k * k, 0.0);
  std::vector<double> norms(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    norms[i] = std::sqrt(std::inner_product(columns[i].begin(), columns[i].end(),
                                            columns[i].begin(), 0.0));

  parallelFor(k, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double v;
      if (metric == DistanceMetric::Cosine) {
        if (norms[i] == 0.0 && norms[j] == 0.0) {
          v = 0.0;
        } else if (norms[i] == 0.0 || norms[j] == 0.0) {
          v = 1.0;
        } else {
          const double dot =
              std::inner_product(columns[i].begin(), columns[i].end(), columns[j].begin(), 0.0);
          v = std::max(0.0, 1.0 - std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0));
        }
      } else {
        double ss = 0.0;
        for (std::size_t r = 0; r < columns[i].size(); ++r) {
          const double diff = columns[i][r] - columns[j][r];
          ss += diff * diff;
        }
        v = std::sqrt(ss);
      }
      d.values[i * k + j] = v;
    }
  });
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) d.values[j * k + i] = d.values[i * k + j];
  return d;
}

DistanceMatrix cosineDistanceMatrix(const std::vector<std::vector<double>>& columns) {
  return distanceMatrix(columns, DistanceMetric::Cosine);
}

DistanceMatrix temporalFilter(const DistanceMatrix& d, std::span<const int> times, int epsTime) {
  if (epsTime < 0) throw InvalidArgument("epsTime must be non-negative");
  if (times.size() != d.size) throw InvalidArgument("times length does not match matrix");
  DistanceMatrix out = d;
  for (std::size_t i = 0; i < d.size; ++i)
    for (std::size_t j = 0; j < d.size; ++j)
      if (i != j && std::abs(static_cast<long>(times[i]) - times[j]) > epsTime)
        out.at(i, j) = kUnlinked;
  return out;
}

std::size_t ClusterAssignment::noiseCount() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
}

// ---------------------------------------------------------------------------

ViewState identityView(std::size_t rows, std::size_t cols) {
  ViewState s;
  s.rowPermutation.resize(rows);
  s.colPermutation.resize(cols);
  std::iota(s.rowPermutation.begin(), s.rowPermutation.end(), 0);
  std::iota(s.colPermutation.begin(), s.colPermutation.end(), 0);
  return s;
}

bool isPermutation(std::span<const std::size_t> p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

ColumnOrder parseColumnOrder(std::string_view name) {
  if (name == "time" || name == "byTime") return ColumnOrder::Time;
  if (name == "cluster" || name == "byClusterThenTime") return ColumnOrder::ClusterThenTime;
  if (name == "network-metric" || name == "byNetworkMetric") return ColumnOrder::NetworkMetric;
  if (name == "node-metric" || name == "byNodeMetric") return ColumnOrder::NodeMetric;
  throw InvalidArgument("unknown column strategy: " + std::string(name));
}

ViewState orderColumns(const ViewState& state, const ColumnStrategy& strategy,
                       std::span<const int> times) {
  const std::size_t n = state.colPermutation.size();
  if (times.size() != n) throw InvalidArgument("times length does not match column count");
  ViewState out = state;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  switch (strategy.order) {
    case ColumnOrder::Time:
      std::stable_sort(perm.begin(), perm.end(),
                       [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
      break;
    case ColumnOrder::NetworkMetric:
    case ColumnOrder::NodeMetric:
      if (strategy.metric.size() != n) throw InvalidArgument("metric length does not match columns");
      std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return strategy.metric[a] < strategy.metric[b];
      });
      break;
    case ColumnOrder::ClusterThenTime: {
      if (!state.clusters || state.clusters->labels.size() != n)
        throw InvalidArgument("cluster ordering needs a cluster assignment for every column");
      auto& clusters = *out.clusters;
      const int count = clusters.clusterCount();
      std::vector<int> earliest(count, std::numeric_limits<int>::max());
      std::vector<std::size_t> firstIndex(count, n);
      for (std::size_t c = 0; c < n; ++c) {
        const int label = clusters.labels[c];
        if (label == kNoise) continue;
        if (times[c] < earliest[label] || (times[c] == earliest[label] && c < firstIndex[label])) {
          earliest[label] = times[c];
          firstIndex[label] = c;
        }
      }
      std::vector<int> order(count);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(earliest[a], firstIndex[a]) < std::tie(earliest[b], firstIndex[b]);
      });
      clusters.clusterOrder = order;
      std::vector<int> rank(count);
      for (int k = 0; k < count; ++k) rank[order[k]] = k;
      const auto groupOf = [&](std::size_t c) {
        const int label = clusters.labels[c];
        return label == kNoise ? count : rank[label];
      };
      std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        const int ga = groupOf(a), gb = groupOf(b);
        if (ga != gb) return ga < gb;
        return times[a] < times[b];
      });
      break;
    }
  }
  out.colPermutation = std::move(perm);
  return out;
}

RowStatistic parseRowStatistic(std::string_view name) {
  if (name == "mean") return RowStatistic::Mean;
  if (name == "median") return RowStatistic::Median;
  if (name == "min") return RowStatistic::Min;
  if (name == "max") return RowStatistic::Max;
  if (name == "variance") return RowStatistic::Variance;
  if (name == "std") return RowStatistic::Std;
  throw InvalidArgument("unknown row statistic: " + std::string(name));
}

std::string_view statisticName(RowStatistic s) {
  switch (s) {
    case RowStatistic::Mean: return "mean";
    case RowStatistic::Median: return "median";
    case RowStatistic::Min: return "min";
    case RowStatistic::Max: return "max";
    case RowStatistic::Variance: return "variance";
    case RowStatistic::Std: return "std";
  }
  return "mean";
}

double rowStatistic(std::span<const double> values, RowStatistic s) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  switch (s) {
    case RowStatistic::Mean: return mean;
    case RowStatistic::Min: return *std::min_element(values.begin(), values.end());
    case RowStatistic::Max: return *std::max_element(values.begin(), values.end());
    case RowStatistic::Median: {
      std::vector<double> sorted(values.begin(), values.end());
      std::sort(sorted.begin(), sorted.end());
      const std::size_t mid = sorted.size() / 2;
      return sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }
    case RowStatistic::Variance:
    case RowStatistic::Std: {
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      const double var = ss / n;
      return s == RowStatistic::Variance ? var : std::sqrt(var);
    }
  }
  return mean;
}

ViewState orderRows(const ViewState& state, RowStatistic statistic, const DenseMatrix& matrix) {
  if (matrix.rows == 0 || matrix.cols == 0) throw InvalidArgument("cannot order rows of an empty matrix");
  if (state.rowPermutation.size() != matrix.rows) throw InvalidArgument("row count mismatch");
  std::vector<double> key(matrix.rows);
  for (std::size_t r = 0; r < matrix.rows; ++r) key[r] = rowStatistic(matrix.row(r), statistic);
  ViewState out = state;
  std::iota(out.rowPermutation.begin(), out.rowPermutation.end(), 0);
  std::stable_sort(out.rowPermutation.begin(), out.rowPermutation.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return out;
}

std::vector<std::size_t> clusterMembers(const ViewState& state, int clusterId) {
  if (!state.clusters) throw InvalidArgument("view has no cluster assignment");
  const auto& labels = state.clusters->labels;
  if (clusterId < 0 || clusterId >= state.clusters->clusterCount())
    throw InvalidArgument("unknown cluster id " + std::to_string(clusterId));
  std::vector<std::size_t> members;
  for (std::size_t c : state.colPermutation)
    if (c < labels.size() && labels[c] == clusterId) members.push_back(c);
  return members;
}

CollapsedLayout collapse(const ViewState& state, int clusterId) {
  const auto members = clusterMembers(state, clusterId);
  CollapsedLayout layout;
  layout.clusterId = clusterId;
  if (members.size() <= kCollapsedHead + kCollapsedTail) {
    layout.visibleColumns = members;
    return layout;
  }
  layout.visibleColumns.assign(members.begin(), members.begin() + kCollapsedHead);
  layout.visibleColumns.insert(layout.visibleColumns.end(), members.end() - kCollapsedTail,
                               members.end());
  layout.hiddenCount = members.size() - kCollapsedHead - kCollapsedTail;
  layout.placeholderAfter = kCollapsedHead;
  return layout;
}

}  // namespace netcensus
