#include "netcensus/triad_census.hpp"

#include <algorithm>
#include <cmath>

#include "netcensus/common.hpp"
#include "netcensus/null_model.hpp"

namespace netcensus {
namespace {

// Representative arc masks for each connected class, nodes A=0, B=1, C=2.
constexpr std::array<TriadCode, kTriadClasses> kRepresentatives = {
    0b010010,  // 021D: B->A, B->C
    0b100001,  // 021U: A->B, C->B
    0b010001,  // 021C: A->B, B->C
    0b100011,  // 111D: A<->B, C->B
    0b010011,  // 111U: A<->B, B->C
    0b100101,  // 030T: A->B, C->B, A->C
    0b100110,  // 030C: B->A, C->B, A->C
    0b110011,  // 201:  A<->B, B<->C
    0b011110,  // 120D: B->A, B->C, A<->C
    0b101101,  // 120U: A->B, C->B, A<->C
    0b011101,  // 120C: A->B, B->C, A<->C
    0b111101,  // 210:  A->B, B<->C, A<->C
    0b111111,  // 300
};

bool arcIn(TriadCode code, int from, int to) {
  static constexpr int kBit[3][3] = {{-1, 0, 2}, {1, -1, 4}, {3, 5, -1}};
  return (code >> kBit[from][to]) & 1u;
}

TriadCode permute(TriadCode code, const std::array<int, 3>& p) {
  // node i of the input becomes node p[i]
  TriadCode out = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b && arcIn(code, a, b))
        out |= triadCode(p[a] == 0 && p[b] == 1, p[a] == 1 && p[b] == 0, p[a] == 0 && p[b] == 2,
                         p[a] == 2 && p[b] == 0, p[a] == 1 && p[b] == 2, p[a] == 2 && p[b] == 1);
  return out;
}

std::array<int, 64> buildClassTable() {
  std::array<int, 64> table{};
  std::array<int, 3> p = {0, 1, 2};
  do {
    for (std::size_t k = 0; k < kTriadClasses; ++k) table[permute(kRepresentatives[k], p)] = int(k) + 1;
  } while (std::next_permutation(p.begin(), p.end()));
  return table;
}

const std::array<int, 64>& classTable() {
  static const std::array<int, 64> table = buildClassTable();
  return table;
}

std::vector<std::vector<int>> undirectedNeighbors(const Snapshot& g) {
  const int n = static_cast<int>(g.nodeCount());
  std::vector<std::vector<int>> nbrs(n);
  for (int v = 0; v < n; ++v) {
    const auto out = g.outNeighbors(v);
    const auto in = g.inNeighbors(v);
    auto& list = nbrs[v];
    list.reserve(out.size() + in.size());
    std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(list));
  }
  return nbrs;
}

}  // namespace

TriadCode triadCode(bool ab, bool ba, bool ac, bool ca, bool bc, bool cb) {
  return TriadCode(ab) | TriadCode(ba) << 1 | TriadCode(ac) << 2 | TriadCode(ca) << 3 |
         TriadCode(bc) << 4 | TriadCode(cb) << 5;
}

int classifyTriad(TriadCode code) {
  if (code >= 64) throw InvalidArgument("triad code out of range");
  return classTable()[code];
}

int classifyTriad(const Snapshot& g, int a, int b, int c) {
  if (a == b || b == c || a == c) throw InvalidArgument("a triad needs three distinct nodes");
  return classifyTriad(triadCode(g.hasArc(a, b), g.hasArc(b, a), g.hasArc(a, c), g.hasArc(c, a),
                                 g.hasArc(b, c), g.hasArc(c, b)));
}

TriadCounts countTriads(const Snapshot& g) {
  TriadCounts counts{};
  const auto nbrs = undirectedNeighbors(g);
  const int n = static_cast<int>(nbrs.size());
  for (int v = 0; v < n; ++v) {
    const auto& nv = nbrs[v];
    for (int u : nv) {
      if (u <= v) continue;
      const auto& nu = nbrs[u];
      // walk N(v) u N(u) \ {u, v} in order, remembering membership in N(v)
      std::size_t i = 0, j = 0;
      while (i < nv.size() || j < nu.size()) {
        int w;
        bool adjacentToV;
        if (j == nu.size() || (i < nv.size() && nv[i] < nu[j])) {
          w = nv[i++];
          adjacentToV = true;
        } else if (i == nv.size() || nu[j] < nv[i]) {
          w = nu[j++];
          adjacentToV = false;
        } else {
          w = nv[i++];
          ++j;
          adjacentToV = true;
        }
        if (w == u || w == v) continue;
        if (u < w || (v < w && w < u && !adjacentToV)) {
          const int cls = classifyTriad(g, v, u, w);
          if (cls > 0) ++counts[cls - 1];
        }
      }
    }
  }
  return counts;
}

std::array<double, kTriadClasses> significanceProfile(const std::array<double, kTriadClasses>& z) {
  double norm2 = 0.0;
  for (double x : z) norm2 += x * x;
  std::array<double, kTriadClasses> sp{};
  if (norm2 == 0.0) return sp;
  const double norm = std::sqrt(norm2);
  for (std::size_t i = 0; i < kTriadClasses; ++i) sp[i] = std::clamp(z[i] / norm, -1.0, 1.0);
  return sp;
}

CensusVector computeCensus(const Snapshot& g, const TriadCounts& real,
                           const NullEnsembleStats& ensemble) {
  if (ensemble.degreeSignature != degreeSignature(g))
    throw Error("null ensemble degree sequence does not match snapshot " +
                std::to_string(g.index()));
  CensusVector cv;
  cv.counts = real;
  cv.snapshotIndex = g.index();
  cv.nullEnsembleSize = ensemble.sampleCount;
  for (std::size_t i = 0; i < kTriadClasses; ++i) {
    const double sd = ensemble.stddev[i];
    cv.z[i] = sd > 0.0 ? (static_cast<double>(real[i]) - ensemble.mean[i]) / sd : 0.0;
  }
  cv.sp = significanceProfile(cv.z);
  return cv;
}

CensusVector computeCensus(const Snapshot& g, const NullEnsembleStats& ensemble) {
  return computeCensus(g, countTriads(g), ensemble);
}

std::vector<double> CensusMatrix::column(std::size_t col) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, col);
  return out;
}

CensusRun buildCensus(const DynamicNetwork& dn, const CensusOptions& options) {
  if (options.nullCount < 1) throw InvalidArgument("nullCount must be at least 1");
  const std::size_t T = dn.snapshots.size();
  CensusRun run;
  run.columns.resize(T);

  // Snapshots run in parallel; each ensemble is drawn sequentially inside.
  parallelFor(
      T,
      [&](std::size_t t) {
        const Snapshot& g = dn.snapshots[t];
        CensusVector cv;
        cv.snapshotIndex = g.index();
        if (g.edgeCount() > 0) {
          NullModelOptions nm;
          nm.swapFactor = options.swapFactor;
          nm.threads = 1;
          const auto stats = ensembleStats(g, options.nullCount, options.seed ^ t, nm);
          cv = computeCensus(g, countTriads(g), stats);
        }
        run.columns[t] = cv;
      },
      options.threads == 0 ? defaultThreadCount() : options.threads);

  auto& m = run.matrix;
  m.motifs.assign(kTriadLabels.begin(), kTriadLabels.end());
  m.times.resize(T);
  for (std::size_t t = 0; t < T; ++t) m.times[t] = static_cast<int>(t);
  m.values.assign(kTriadClasses * T, 0.0);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t r = 0; r < kTriadClasses; ++r) m.values[r * T + t] = run.columns[t].sp[r];
  return run;
}

CensusMatrix buildCensusMatrix(const DynamicNetwork& dn, std::size_t nullCount,
                               std::uint64_t seed) {
  CensusOptions options;
  options.nullCount = nullCount;
  options.seed = seed;
  return buildCensus(dn, options).matrix;
}

}  // namespace netcensus
