#pragma once

#include <array>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "netcensus/common.hpp"
#include "netcensus/temporal_graph.hpp"
#include "netcensus/triad_census.hpp"

namespace netcensus {

struct NullEnsembleStats {
  std::array<double, kTriadClasses> mean{};
  std::array<double, kTriadClasses> stddev{};  // population standard deviation
  std::size_t sampleCount = 0;
  DegreeSignature degreeSignature;
};

struct NullModelOptions {
  // swap attempts per arc; attempts = ceil(swapFactor * |E|)
  double swapFactor = 10.0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Directed double-edge swap over a fixed arc list: (a->b, c->d) becomes
// (a->d, c->b) unless that would create a self-loop or a parallel arc.
// In- and out-degrees of every node are invariant under accepted swaps.
class EdgeSwapper {
 public:
  explicit EdgeSwapper(std::vector<Arc> arcs);

  // Returns false (and leaves the arcs untouched) when the swap is invalid.
  bool trySwap(std::size_t i, std::size_t j);
  // One random attempt; returns whether it was accepted.
  bool attempt(Rng& rng);

  const std::vector<Arc>& arcs() const { return arcs_; }
  std::vector<Arc> release() { return std::move(arcs_); }

 private:
  static std::uint64_t key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }

  std::vector<Arc> arcs_;
  std::unordered_set<std::uint64_t> present_;
};

// Configuration-model sample: ceil(swapFactor * |E|) swap attempts driven by
// mt19937_64 seeded with `seed`. Graphs without a valid swap come back as-is.
Snapshot randomize(const Snapshot& g, std::uint64_t seed, double swapFactor = 10.0);

// Mean and population std of the triad counts over `count` randomize draws;
// draw i uses seed ^ i. Reduction runs in draw order so results do not depend
// on the thread count.
NullEnsembleStats ensembleStats(const Snapshot& g, std::size_t count, std::uint64_t seed,
                                const NullModelOptions& options = {});

}  // namespace netcensus
