#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netcensus/serialization.hpp"

namespace netcensus {

inline constexpr const char* kCacheFormatVersion = "1";
inline constexpr const char* kCacheRootEnv = "NETCENSUS_CACHE";

// Every parameter that changes a derived artifact. The census cache records
// the hash of these values; a mismatch means the artifact is stale.
struct AnalysisParameters {
  Timestamp binWidth = 86400;
  std::size_t nullCount = 100;
  std::uint64_t seed = 1;
  int maxGraphletSize = 4;
  double swapFactor = 10.0;
  std::string version = kCacheFormatVersion;
};

Json toJson(const AnalysisParameters& p);
AnalysisParameters parametersFromJson(const Json& j);
std::string parametersHash(const AnalysisParameters& p);

// 64-bit FNV-1a as 16 hex digits.
std::string contentHash(const std::string& bytes);

// Writes to a sibling temp file and renames it over the target, so readers
// see either the old or the new content.
void writeFileAtomic(const std::filesystem::path& path, const std::string& content);
std::string readFile(const std::filesystem::path& path);

struct CensusCacheEntry {
  CensusRun run;
  std::string parametersHash;
  std::string rngName;
  std::uint64_t seed = 0;
};

// On-disk layout of one dataset:
//   manifest.json   dataset manifest, parameters, parameter hash, totals
//   network.json    discretized snapshots
//   census.json     census matrix + per-snapshot vectors
//   metrics.json    per-snapshot network metrics
//   layout.json     supergraph layout positions
//   gdv/<t>-<k>.json  lazily computed GDV matrices
class AnalysisCache {
 public:
  explicit AnalysisCache(std::filesystem::path dir);

  static AnalysisCache create(const std::filesystem::path& dir, const DatasetManifest& manifest,
                              const AnalysisParameters& parameters, const DynamicNetwork& network);

  const std::filesystem::path& dir() const { return dir_; }
  bool exists() const;

  Json manifestJson() const;
  DatasetManifest datasetManifest() const;
  AnalysisParameters parameters() const;
  void updateParameters(const AnalysisParameters& p);

  DynamicNetwork loadNetwork() const;

  bool hasCensus() const;
  // Throws when absent. Check `parametersHash` against the manifest to detect staleness.
  CensusCacheEntry loadCensus() const;
  void storeCensus(const CensusRun& run, const AnalysisParameters& p);
  bool censusIsCurrent() const;
  std::string censusFileHash() const;

  std::optional<GdvMatrix> loadGdv(std::size_t snapshot, int maxSize) const;
  void storeGdv(std::size_t snapshot, const GdvMatrix& m);

  std::optional<std::vector<NetworkMetrics>> loadMetrics() const;
  void storeMetrics(const std::vector<NetworkMetrics>& m);

  std::optional<std::map<NodeId, Point>> loadLayout() const;
  void storeLayout(const std::vector<NodeId>& ids, const std::vector<Point>& positions);

 private:
  std::filesystem::path dir_;
};

// Cache root from NETCENSUS_CACHE, falling back to ./netcensus-cache.
std::filesystem::path defaultCacheRoot();

}  // namespace netcensus
