#include "netcensus/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "netcensus/common.hpp"

namespace netcensus {

std::vector<double> localClustering(const UndirectedGraph& g) {
  const std::size_t n = g.nodeCount();
  std::vector<double> cc(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto nb = g.neighbors(static_cast<int>(v));
    const std::size_t k = nb.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (g.adjacent(nb[i], nb[j])) ++links;
    cc[v] = static_cast<double>(links) / (static_cast<double>(k) * (k - 1) / 2.0);
  }
  return cc;
}

NetworkMetrics networkMetrics(const Snapshot& g) {
  NetworkMetrics m;
  m.edgeCount = g.edgeCount();
  m.nodeCount = g.nodeCount();
  if (m.nodeCount == 0) return m;
  const auto cc = localClustering(undirect(g));
  m.avgClusteringCoefficient = std::accumulate(cc.begin(), cc.end(), 0.0) / cc.size();
  return m;
}

std::vector<double> pagerank(const Snapshot& g, const PageRankOptions& options,
                             std::size_t* iterations) {
  if (!(options.damping > 0.0 && options.damping < 1.0))
    throw InvalidArgument("damping must lie in (0, 1)");
  const std::size_t n = g.nodeCount();
  if (iterations) *iterations = 0;
  if (n == 0) return {};
  const double alpha = options.damping;
  std::vector<double> rank(n, 1.0 / n), next(n);
  for (std::size_t it = 0; it < options.maxIterations; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (g.outDegree(static_cast<int>(v)) == 0) dangling += rank[v];
    const double base = (1.0 - alpha) / n + alpha * dangling / n;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t v = 0; v < n; ++v) {
      const auto out = g.outNeighbors(static_cast<int>(v));
      if (out.empty()) continue;
      const double share = alpha * rank[v] / static_cast<double>(out.size());
      for (int w : out) next[w] += share;
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (iterations) *iterations = it + 1;
    if (change < options.tolerance) break;
  }
  const double total = std::accumulate(rank.begin(), rank.end(), 0.0);
  for (double& r : rank) r /= total;
  return rank;
}

NodeMetrics nodeMetrics(const Snapshot& g, double damping) {
  NodeMetrics m;
  PageRankOptions options;
  options.damping = damping;
  m.pagerank = pagerank(g, options, &m.pagerankIterations);
  const std::size_t n = g.nodeCount();
  m.degreeCentrality.assign(n, 0.0);
  if (n > 1)
    for (std::size_t v = 0; v < n; ++v)
      m.degreeCentrality[v] = static_cast<double>(g.inDegree(int(v)) + g.outDegree(int(v))) /
                              (2.0 * static_cast<double>(n - 1));
  return m;
}

// ---------------------------------------------------------------------------

int CommunityPartition::communityCount() const {
  return assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
}

double modularity(const UndirectedGraph& g, const std::vector<int>& assignment) {
  const std::size_t n = g.nodeCount();
  if (assignment.size() != n) throw InvalidArgument("partition size does not match graph");
  const double m = static_cast<double>(g.edgeCount());
  if (m == 0) return 0.0;
  std::map<int, double> inside, degreeSum;
  for (std::size_t v = 0; v < n; ++v) {
    degreeSum[assignment[v]] += g.degree(static_cast<int>(v));
    for (int w : g.neighbors(static_cast<int>(v)))
      if (static_cast<std::size_t>(w) > v && assignment[w] == assignment[v]) inside[assignment[v]] += 1;
  }
  double q = 0.0;
  for (const auto& [c, deg] : degreeSum) {
    const double a = deg / (2.0 * m);
    q += inside[c] / m - a * a;
  }
  return q;
}

CommunityPartition communities(const UndirectedGraph& g) {
  const std::size_t n = g.nodeCount();
  CommunityPartition result;
  result.assignment.resize(n);
  std::iota(result.assignment.begin(), result.assignment.end(), 0);
  const double m = static_cast<double>(g.edgeCount());
  if (m == 0) return result;

  // e[i][j]: half the fraction of edges joining communities i and j.
  std::vector<std::map<int, double>> e(n);
  std::vector<double> a(n);
  std::vector<int> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    a[v] = g.degree(static_cast<int>(v)) / (2.0 * m);
    for (int w : g.neighbors(static_cast<int>(v))) e[v][w] = 1.0 / (2.0 * m);
  }
  std::vector<std::vector<int>> members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = {static_cast<int>(v)};

  constexpr double kMinGain = 1e-12;
  while (true) {
    double bestGain = kMinGain;
    int bi = -1, bj = -1;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, eij] : e[i]) {
        if (j <= static_cast<int>(i)) continue;
        const double gain = 2.0 * (eij - a[i] * a[j]);
        // strict comparison plus (i, j) iteration order keeps the smallest pair on ties
        if (gain > bestGain + 1e-15) {
          bestGain = gain;
          bi = static_cast<int>(i);
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    // fold bj into bi
    for (const auto& [k, ejk] : e[bj]) {
      if (k == bi) continue;
      e[bi][k] += ejk;
      e[k][bi] += ejk;
      e[k].erase(bj);
    }
    e[bi].erase(bj);
    e[bj].clear();
    a[bi] += a[bj];
    a[bj] = 0.0;
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    members[bj].clear();
  }

  int next = 0;
  std::vector<int> label(n, -1);
  for (std::size_t c = 0; c < n; ++c)
    for (int v : members[c]) owner[v] = static_cast<int>(c);
  for (std::size_t v = 0; v < n; ++v) {
    if (label[owner[v]] < 0) label[owner[v]] = next++;
    result.assignment[v] = label[owner[v]];
  }
  result.modularity = modularity(g, result.assignment);
  return result;
}

CommunityPartition communities(const Snapshot& g) { return communities(undirect(g)); }

// ---------------------------------------------------------------------------

Point initialPosition(const NodeId& id, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  const std::uint64_t a = splitmix64(h ^ splitmix64(seed));
  const std::uint64_t b = splitmix64(a);
  const double u = static_cast<double>(a >> 11) * 0x1.0p-53;
  const double t = static_cast<double>(b >> 11) * 0x1.0p-53;
  const double r = std::sqrt(u);
  return {r * std::cos(2.0 * std::numbers::pi * t), r * std::sin(2.0 * std::numbers::pi * t)};
}

std::vector<Point> forceLayout(const UndirectedGraph& g, const std::vector<NodeId>& ids,
                               const ForceLayoutOptions& options, LayoutTrace* trace) {
  const std::size_t n = g.nodeCount();
  if (ids.size() != n) throw InvalidArgument("node id count does not match graph");
  if (options.iterations < 1) throw InvalidArgument("layout needs at least one iteration");
  std::vector<Point> pos(n);
  for (std::size_t v = 0; v < n; ++v) pos[v] = initialPosition(ids[v], options.seed);
  if (n <= 1) {
    if (n == 1) pos[0] = {0.0, 0.0};
    return pos;
  }

  std::vector<double> mass(n);
  for (std::size_t v = 0; v < n; ++v) mass[v] = g.degree(static_cast<int>(v)) + 1.0;
  std::vector<Point> force(n), previous(n);
  double speed = 1.0;
  double speedEfficiency = 1.0;
  const double dn = static_cast<double>(n);
  if (trace) trace->meanDisplacement.clear();

  for (std::size_t iter = 0; iter < options.iterations; ++iter) {
    previous.swap(force);
    std::fill(force.begin(), force.end(), Point{});

    // Repulsion. Row sums are accumulated per node in index order so the
    // result does not depend on how rows are split across threads.
    parallelFor(n, [&](std::size_t i) {
      Point f{};
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
        const double d2 = dx * dx + dy * dy;
        if (d2 <= 0.0) continue;
        const double factor = options.scalingRatio * mass[i] * mass[j] / d2;
        f.x += dx * factor;
        f.y += dy * factor;
      }
      force[i] = f;
    });

    for (std::size_t v = 0; v < n; ++v) {
      const double d = std::hypot(pos[v].x, pos[v].y);
      if (d > 0.0) {
        const double factor = options.gravity * mass[v] / d;
        force[v].x -= pos[v].x * factor;
        force[v].y -= pos[v].y * factor;
      }
    }

    for (std::size_t u = 0; u < n; ++u) {
      for (int w : g.neighbors(static_cast<int>(u))) {
        if (static_cast<std::size_t>(w) <= u) continue;
        const double dx = pos[u].x - pos[w].x, dy = pos[u].y - pos[w].y;
        double factor = -1.0;
        if (options.linLog) {
          const double d = std::hypot(dx, dy);
          factor = d > 0.0 ? -std::log1p(d) / d : 0.0;
        }
        force[u].x += dx * factor;
        force[u].y += dy * factor;
        force[w].x -= dx * factor;
        force[w].y -= dy * factor;
      }
    }

    // Global speed from swing (oscillation) vs. traction (useful motion).
    double swinging = 0.0, traction = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      swinging += mass[v] * std::hypot(force[v].x - previous[v].x, force[v].y - previous[v].y);
      traction +=
          mass[v] * 0.5 * std::hypot(force[v].x + previous[v].x, force[v].y + previous[v].y);
    }
    const double estimatedJitter = 0.05 * std::sqrt(dn);
    const double minJitter = std::sqrt(estimatedJitter);
    const double maxJitter = 10.0;
    double jitter = options.jitterTolerance *
                    std::max(minJitter, std::min(maxJitter, estimatedJitter * traction / (dn * dn)));
    constexpr double kMinSpeedEfficiency = 0.05;
    if (traction > 0.0 && swinging / traction > 2.0) {
      if (speedEfficiency > kMinSpeedEfficiency) speedEfficiency *= 0.5;
      jitter = std::max(jitter, options.jitterTolerance);
    }
    const double targetSpeed =
        swinging > 0.0 ? jitter * speedEfficiency * traction / swinging : speed;
    if (swinging > jitter * traction) {
      if (speedEfficiency > kMinSpeedEfficiency) speedEfficiency *= 0.7;
    } else if (speed < 1000.0) {
      speedEfficiency *= 1.3;
    }
    constexpr double kMaxRise = 0.5;
    speed = speed + std::min(targetSpeed - speed, kMaxRise * speed);

    double moved = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double swing =
          mass[v] * std::hypot(force[v].x - previous[v].x, force[v].y - previous[v].y);
      const double factor = speed / (1.0 + std::sqrt(speed * swing));
      pos[v].x += force[v].x * factor;
      pos[v].y += force[v].y * factor;
      moved += std::hypot(force[v].x * factor, force[v].y * factor);
    }
    if (trace) trace->meanDisplacement.push_back(moved / dn);
  }

  Point centroid{};
  for (const auto& p : pos) {
    centroid.x += p.x;
    centroid.y += p.y;
  }
  centroid.x /= dn;
  centroid.y /= dn;
  for (auto& p : pos) {
    p.x -= centroid.x;
    p.y -= centroid.y;
  }
  return pos;
}

std::vector<Point> forceLayout(const Snapshot& g, std::size_t iterations, std::uint64_t seed) {
  ForceLayoutOptions options;
  options.iterations = iterations;
  options.seed = seed;
  return forceLayout(undirect(g), g.nodes(), options);
}

}  // namespace netcensus
