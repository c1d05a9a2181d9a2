#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "netcensus/cluster_reorder.hpp"
#include "netcensus/common.hpp"

namespace netcensus {
namespace {

// lambda = 1 / distance, capped so exact duplicates stay finite.
constexpr double kMaxLambda = 1e12;

double lambdaOf(double distance) {
  if (distance >= kUnlinked || std::isinf(distance)) return 0.0;
  if (distance <= 1.0 / kMaxLambda) return kMaxLambda;
  return 1.0 / distance;
}

struct MstEdge {
  std::size_t a, b;
  double weight;
};

std::vector<double> coreDistances(const DistanceMatrix& d, int k) {
  const std::size_t n = d.size;
  std::vector<double> core(n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[j] = i == j ? 0.0 : d.at(i, j);
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    core[i] = row[k - 1];
  }
  return core;
}

// Prim over the dense mutual-reachability graph. Unlinked pairs are never
// used, so the result is a spanning forest.
std::vector<MstEdge> spanningForest(const DistanceMatrix& d, const std::vector<double>& core) {
  const std::size_t n = d.size;
  std::vector<bool> inTree(n, false);
  std::vector<double> best(n, kUnlinked);
  std::vector<std::size_t> from(n, n);
  std::vector<MstEdge> edges;
  edges.reserve(n);
  const auto reach = [&](std::size_t i, std::size_t j) {
    const double raw = d.at(i, j);
    if (raw >= kUnlinked || core[i] >= kUnlinked || core[j] >= kUnlinked) return kUnlinked;
    return std::max({raw, core[i], core[j]});
  };

  for (std::size_t added = 0; added < n; ++added) {
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!inTree[v] && (next == n || best[v] < best[next])) next = v;
    inTree[next] = true;
    if (from[next] != n && best[next] < kUnlinked)
      edges.push_back({std::min(from[next], next), std::max(from[next], next), best[next]});
    for (std::size_t v = 0; v < n; ++v) {
      if (inTree[v]) continue;
      const double w = reach(next, v);
      if (w < best[v]) {
        best[v] = w;
        from[v] = next;
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const MstEdge& x, const MstEdge& y) {
    return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
  });
  return edges;
}

struct Dendrogram {
  // nodes [0, n) are points; node n + i is the i-th merge
  std::vector<std::size_t> left, right, size;
  std::vector<double> distance;
};

Dendrogram singleLinkage(std::size_t n, const std::vector<MstEdge>& edges) {
  Dendrogram tree;
  tree.size.assign(n, 1);
  tree.left.assign(n, 0);
  tree.right.assign(n, 0);
  tree.distance.assign(n, 0.0);
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto merge = [&](std::size_t ra, std::size_t rb, double w) {
    const std::size_t id = tree.size.size();
    tree.left.push_back(ra);
    tree.right.push_back(rb);
    tree.size.push_back(tree.size[ra] + tree.size[rb]);
    tree.distance.push_back(w);
    parent[ra] = parent[rb] = id;
  };
  for (const auto& e : edges) merge(find(e.a), find(e.b), e.weight);
  // join disconnected components at infinite distance (lambda 0)
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = find(v);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  for (std::size_t i = 1; i < roots.size(); ++i)
    merge(find(roots[0]), find(roots[i]), kUnlinked);
  return tree;
}

struct CondensedEntry {
  int parent;
  std::size_t child;  // point index, or cluster id when isCluster
  bool isCluster;
  double lambda;
  std::size_t size;
};

void collectLeaves(const Dendrogram& t, std::size_t node, std::size_t n,
                   std::vector<std::size_t>& out) {
  std::vector<std::size_t> stack{node};
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    if (x < n) {
      out.push_back(x);
    } else {
      stack.push_back(t.right[x]);
      stack.push_back(t.left[x]);
    }
  }
}

}  // namespace

ClusterAssignment clusterDensity(const DistanceMatrix& d, int minClusterSize) {
  if (minClusterSize < 2) throw InvalidArgument("minClusterSize must be at least 2");
  const std::size_t n = d.size;
  ClusterAssignment result;
  result.minClusterSize = minClusterSize;
  result.labels.assign(n, kNoise);
  if (n < static_cast<std::size_t>(minClusterSize)) return result;

  const auto core = coreDistances(d, minClusterSize);
  const auto edges = spanningForest(d, core);
  const Dendrogram tree = singleLinkage(n, edges);
  const std::size_t mcs = static_cast<std::size_t>(minClusterSize);

  // Condense: walk down from the root keeping only splits where both sides
  // have at least minClusterSize points.
  std::vector<CondensedEntry> condensed;
  std::vector<double> birth{0.0};
  std::vector<int> clusterParent{-1};
  const std::size_t root = tree.size.size() - 1;
  std::vector<std::pair<std::size_t, int>> work{{root, 0}};
  std::vector<std::size_t> leaves;
  while (!work.empty()) {
    auto [node, cluster] = work.back();
    work.pop_back();
    if (node < n) {
      // a single point reached directly (n == 1 or a size-1 branch kept)
      condensed.push_back({cluster, node, false, birth[cluster], 1});
      continue;
    }
    const double lambda = lambdaOf(tree.distance[node]);
    const std::size_t l = tree.left[node], r = tree.right[node];
    const bool bigL = tree.size[l] >= mcs, bigR = tree.size[r] >= mcs;
    if (bigL && bigR) {
      for (std::size_t child : {l, r}) {
        const int id = static_cast<int>(birth.size());
        birth.push_back(lambda);
        clusterParent.push_back(cluster);
        condensed.push_back({cluster, static_cast<std::size_t>(id), true, lambda, tree.size[child]});
        work.emplace_back(child, id);
      }
      continue;
    }
    for (std::size_t child : {l, r}) {
      if (tree.size[child] >= mcs) {
        work.emplace_back(child, cluster);
      } else {
        leaves.clear();
        collectLeaves(tree, child, n, leaves);
        for (std::size_t p : leaves) condensed.push_back({cluster, p, false, lambda, 1});
      }
    }
  }

  const std::size_t clusters = birth.size();
  std::vector<double> stability(clusters, 0.0);
  std::vector<std::vector<int>> children(clusters);
  std::vector<int> pointCluster(n, 0);
  for (const auto& e : condensed) {
    stability[e.parent] += (e.lambda - birth[e.parent]) * static_cast<double>(e.size);
    if (e.isCluster)
      children[e.parent].push_back(static_cast<int>(e.child));
    else
      pointCluster[e.child] = e.parent;
  }

  // Excess of mass. Children always carry larger ids than their parent.
  std::vector<bool> selected(clusters, false);
  const bool rootOnly = children[0].empty();
  for (std::size_t c = clusters; c-- > 1;) {
    double childSum = 0.0;
    for (int ch : children[c]) childSum += stability[ch];
    if (!children[c].empty() && childSum > stability[c]) {
      stability[c] = childSum;
    } else {
      selected[c] = true;
      std::vector<int> stack(children[c].begin(), children[c].end());
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        selected[x] = false;
        stack.insert(stack.end(), children[x].begin(), children[x].end());
      }
    }
  }
  if (rootOnly) selected[0] = true;

  std::vector<int> rawLabel(n, kNoise);
  for (std::size_t p = 0; p < n; ++p) {
    for (int c = pointCluster[p]; c >= 0; c = clusterParent[c]) {
      if (selected[c]) {
        rawLabel[p] = c;
        break;
      }
    }
  }

  // Renumber by smallest member index.
  std::vector<int> remap(clusters, -1);
  int next = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (rawLabel[p] == kNoise) continue;
    if (remap[rawLabel[p]] < 0) remap[rawLabel[p]] = next++;
    result.labels[p] = remap[rawLabel[p]];
  }
  result.clusterOrder.resize(next);
  std::iota(result.clusterOrder.begin(), result.clusterOrder.end(), 0);
  return result;
}

}  // namespace netcensus
