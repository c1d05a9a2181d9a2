#include "netcensus/graphlet.hpp"

#include <algorithm>
#include <cmath>

#include "netcensus/common.hpp"

namespace netcensus {
namespace {

// Bit index of pair (i, j), i < j. Adding node s only appends bits, so the
// mask of a prefix of a node list is a prefix of the full mask.
constexpr int pairBit(int i, int j) { return j * (j - 1) / 2 + i; }

struct OrbitTable {
  // masks[k] has 2^(k(k-1)/2) entries; each entry holds the orbit of every
  // position, or -1 in slot 0 when the labelled graph is disconnected.
  std::array<std::vector<std::array<std::int8_t, 5>>, 6> masks;
};

unsigned maskOf(const std::vector<std::pair<int, int>>& edges, const std::vector<int>& perm) {
  unsigned mask = 0;
  for (auto [a, b] : edges) {
    int x = perm[a], y = perm[b];
    if (x > y) std::swap(x, y);
    mask |= 1u << pairBit(x, y);
  }
  return mask;
}

OrbitTable buildOrbitTable() {
  OrbitTable table;
  for (int k = 2; k <= 5; ++k) {
    const std::size_t size = std::size_t{1} << (k * (k - 1) / 2);
    std::array<std::int8_t, 5> unset{};
    unset.fill(-1);
    table.masks[k].assign(size, unset);
  }
  for (const auto& spec : graphletCatalog()) {
    const int k = spec.nodes;
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    do {
      // graphlet node i sits at labelled position perm[i]
      auto& entry = table.masks[k][maskOf(spec.edges, perm)];
      for (int i = 0; i < k; ++i) entry[perm[i]] = static_cast<std::int8_t>(spec.orbits[i]);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return table;
}

const OrbitTable& orbitTable() {
  static const OrbitTable table = buildOrbitTable();
  return table;
}

// ESU enumeration of connected sets containing `root` as their smallest node.
class SubgraphEnumerator {
 public:
  SubgraphEnumerator(const UndirectedGraph& g, int maxSize, std::vector<std::uint64_t>& counts)
      : g_(g), maxSize_(maxSize), n_(g.nodeCount()), counts_(counts), touch_(g.nodeCount(), 0) {}

  void run(int root) {
    root_ = root;
    members_.clear();
    add(root);
    std::vector<int> extension;
    for (int u : g_.neighbors(root))
      if (u > root) extension.push_back(u);
    extend(extension, 0u);
    remove(root);
  }

 private:
  void add(int v) {
    members_.push_back(v);
    ++touch_[v];
    for (int u : g_.neighbors(v)) ++touch_[u];
  }

  void remove(int v) {
    members_.pop_back();
    --touch_[v];
    for (int u : g_.neighbors(v)) --touch_[u];
  }

  void extend(std::vector<int> extension, unsigned mask) {
    const int size = static_cast<int>(members_.size());
    while (!extension.empty()) {
      const int w = extension.back();
      extension.pop_back();

      unsigned grown = mask;
      for (int i = 0; i < size; ++i)
        if (g_.adjacent(members_[i], w)) grown |= 1u << pairBit(i, size);

      // exclusive neighbours of w: not in the set and not adjacent to it
      std::vector<int> next = extension;
      for (int u : g_.neighbors(w))
        if (u > root_ && touch_[u] == 0) next.push_back(u);

      add(w);
      record(grown);
      if (size + 1 < maxSize_) extend(std::move(next), grown);
      remove(w);
    }
  }

  void record(unsigned mask) {
    const int k = static_cast<int>(members_.size());
    const auto& entry = orbitTable().masks[k][mask];
    for (int i = 0; i < k; ++i) ++counts_[static_cast<std::size_t>(entry[i]) * n_ + members_[i]];
  }

  const UndirectedGraph& g_;
  int maxSize_;
  std::size_t n_;
  std::vector<std::uint64_t>& counts_;
  std::vector<int> touch_;
  std::vector<int> members_;
  int root_ = 0;
};

}  // namespace

UndirectedGraph::UndirectedGraph(std::size_t n, const std::vector<std::pair<int, int>>& edges)
    : adjacency_(n) {
  for (auto [a, b] : edges) {
    if (a == b) continue;
    if (a < 0 || b < 0 || std::size_t(a) >= n || std::size_t(b) >= n)
      throw InvalidArgument("edge endpoint outside node range");
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    edges_ += list.size();
  }
  edges_ /= 2;
}

bool UndirectedGraph::adjacent(int u, int v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

UndirectedGraph undirect(const Snapshot& g) {
  return UndirectedGraph(g.nodeCount(), g.arcs());
}

const std::vector<GraphletSpec>& graphletCatalog() {
  // Orbit labels match the numbering used by ORCA and the graphlet literature.
  static const std::vector<GraphletSpec> catalog = {
      {0, 2, {{0, 1}}, {0, 0}},
      {1, 3, {{0, 1}, {0, 2}}, {2, 1, 1}},
      {2, 3, {{0, 1}, {0, 2}, {1, 2}}, {3, 3, 3}},
      {3, 4, {{0, 1}, {0, 3}, {1, 2}}, {5, 5, 4, 4}},
      {4, 4, {{0, 1}, {0, 2}, {0, 3}}, {7, 6, 6, 6}},
      {5, 4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {8, 8, 8, 8}},
      {6, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}, {11, 10, 10, 9}},
      {7, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}, {13, 13, 12, 12}},
      {8, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {14, 14, 14, 14}},
      {9, 5, {{0, 2}, {0, 4}, {1, 2}, {1, 3}}, {16, 16, 17, 15, 15}},
      {10, 5, {{0, 1}, {0, 3}, {0, 4}, {1, 2}}, {21, 20, 18, 19, 19}},
      {11, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {23, 22, 22, 22, 22}},
      {12, 5, {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {1, 3}}, {26, 26, 25, 24, 24}},
      {13, 5, {{0, 1}, {0, 4}, {1, 2}, {1, 3}, {2, 3}}, {28, 30, 29, 29, 27}},
      {14, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}}, {33, 32, 32, 31, 31}},
      {15, 5, {{0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}}, {34, 34, 34, 34, 34}},
      {16, 5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}}, {38, 36, 37, 37, 35}},
      {17, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}}, {42, 41, 40, 40, 39}},
      {18, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 4}, {2, 3}}, {44, 43, 43, 43, 43}},
      {19, 5, {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {1, 3}, {2, 3}}, {47, 48, 48, 46, 45}},
      {20, 5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}, {50, 50, 49, 49, 49}},
      {21, 5, {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}}, {53, 53, 51, 51, 52}},
      {22, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}, {55, 55, 54, 54, 54}},
      {23, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {2, 3}}, {58, 57, 57, 57, 56}},
      {24, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}}, {61, 60, 60, 59, 59}},
      {25, 5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}}, {63, 63, 64, 64, 62}},
      {26, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}}, {67, 67, 66, 66, 65}},
      {27, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}, {69, 68, 68, 68, 68}},
      {28, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}},
       {71, 71, 71, 70, 70}},
      {29, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
       {72, 72, 72, 72, 72}},
  };
  return catalog;
}

int orbitCountFor(int maxGraphletSize) {
  switch (maxGraphletSize) {
    case 4: return 15;
    case 5: return 73;
    default: throw InvalidArgument("graphlet size must be 4 or 5");
  }
}

std::vector<std::uint64_t> GdvMatrix::column(std::size_t node) const {
  std::vector<std::uint64_t> out(orbitCount);
  for (int o = 0; o < orbitCount; ++o) out[o] = at(o, node);
  return out;
}

GdvMatrix computeGdv(const UndirectedGraph& g, std::vector<NodeId> nodeIds, int maxSize,
                     unsigned threads) {
  GdvMatrix m;
  m.orbitCount = orbitCountFor(maxSize);
  m.maxGraphletSize = maxSize;
  const std::size_t n = g.nodeCount();
  if (nodeIds.size() != n) throw InvalidArgument("node id count does not match graph");
  m.nodeIds = std::move(nodeIds);
  m.values.assign(static_cast<std::size_t>(m.orbitCount) * n, 0);
  if (n == 0) return m;
  orbitTable();  // build before fanning out

  const std::size_t workers =
      std::min<std::size_t>(threads == 0 ? defaultThreadCount() : threads, n);
  std::vector<std::vector<std::uint64_t>> partial(workers);
  parallelFor(
      workers,
      [&](std::size_t w) {
        partial[w].assign(m.values.size(), 0);
        SubgraphEnumerator esu(g, maxSize, partial[w]);
        for (std::size_t v = w; v < n; v += workers) esu.run(static_cast<int>(v));
      },
      static_cast<unsigned>(workers));
  for (const auto& p : partial)
    for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] += p[i];
  return m;
}

GdvMatrix computeGdv(const Snapshot& g, int maxSize, unsigned threads) {
  return computeGdv(undirect(g), g.nodes(), maxSize, threads);
}

double gdvSimilarityColumns(const GdvMatrix& m, std::size_t i, std::size_t j) {
  if (i >= m.nodeCount() || j >= m.nodeCount()) throw InvalidArgument("GDV column out of range");
  long double dot = 0, ni = 0, nj = 0;
  for (int o = 0; o < m.orbitCount; ++o) {
    const long double a = m.at(o, i), b = m.at(o, j);
    dot += a * b;
    ni += a * a;
    nj += b * b;
  }
  if (ni == 0 && nj == 0) return 1.0;
  if (ni == 0 || nj == 0) return 0.0;
  return std::clamp(static_cast<double>(dot / std::sqrt(ni * nj)), 0.0, 1.0);
}

}  // namespace netcensus
