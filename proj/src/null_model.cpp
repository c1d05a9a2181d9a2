#include "netcensus/null_model.hpp"

#include <cmath>

namespace netcensus {

EdgeSwapper::EdgeSwapper(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
  present_.reserve(arcs_.size() * 2);
  for (const auto& [u, v] : arcs_) present_.insert(key(u, v));
}

bool EdgeSwapper::trySwap(std::size_t i, std::size_t j) {
  if (i == j || i >= arcs_.size() || j >= arcs_.size()) return false;
  const auto [a, b] = arcs_[i];
  const auto [c, d] = arcs_[j];
  if (a == d || c == b) return false;
  if (present_.contains(key(a, d)) || present_.contains(key(c, b))) return false;
  present_.erase(key(a, b));
  present_.erase(key(c, d));
  present_.insert(key(a, d));
  present_.insert(key(c, b));
  arcs_[i] = {a, d};
  arcs_[j] = {c, b};
  return true;
}

bool EdgeSwapper::attempt(Rng& rng) {
  const std::uint64_t m = arcs_.size();
  if (m < 2) return false;
  const auto i = uniformIndex(rng, m);
  const auto j = uniformIndex(rng, m);
  return trySwap(i, j);
}

Snapshot randomize(const Snapshot& g, std::uint64_t seed, double swapFactor) {
  if (swapFactor < 0) throw InvalidArgument("swapFactor must be non-negative");
  EdgeSwapper swapper(g.arcs());
  Rng rng(seed);
  const auto attempts =
      static_cast<std::size_t>(std::ceil(swapFactor * static_cast<double>(g.edgeCount())));
  if (g.edgeCount() >= 2)
    for (std::size_t k = 0; k < attempts; ++k) swapper.attempt(rng);
  return g.withArcs(swapper.release());
}

NullEnsembleStats ensembleStats(const Snapshot& g, std::size_t count, std::uint64_t seed,
                                const NullModelOptions& options) {
  if (count < 1) throw InvalidArgument("null ensemble needs at least one sample");
  std::vector<TriadCounts> draws(count);
  parallelFor(
      count,
      [&](std::size_t i) { draws[i] = countTriads(randomize(g, seed ^ i, options.swapFactor)); },
      options.threads == 0 ? defaultThreadCount() : options.threads);

  NullEnsembleStats stats;
  stats.sampleCount = count;
  stats.degreeSignature = degreeSignature(g);
  const double n = static_cast<double>(count);
  for (std::size_t k = 0; k < kTriadClasses; ++k) {
    double sum = 0.0;
    for (const auto& d : draws) sum += static_cast<double>(d[k]);
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& d : draws) {
      const double dev = static_cast<double>(d[k]) - mean;
      ss += dev * dev;
    }
    stats.mean[k] = mean;
    stats.stddev[k] = std::sqrt(ss / n);
  }
  return stats;
}

}  // namespace netcensus
