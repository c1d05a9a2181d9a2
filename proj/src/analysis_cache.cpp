#include "netcensus/analysis_cache.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "netcensus/common.hpp"

namespace netcensus {
namespace fs = std::filesystem;

Json toJson(const AnalysisParameters& p) {
  return {{"binWidth", p.binWidth},     {"nullCount", p.nullCount},
          {"seed", p.seed},             {"maxGraphletSize", p.maxGraphletSize},
          {"swapFactor", p.swapFactor}, {"version", p.version}};
}

AnalysisParameters parametersFromJson(const Json& j) {
  AnalysisParameters p;
  p.binWidth = j.value("binWidth", p.binWidth);
  p.nullCount = j.value("nullCount", p.nullCount);
  p.seed = j.value("seed", p.seed);
  p.maxGraphletSize = j.value("maxGraphletSize", p.maxGraphletSize);
  p.swapFactor = j.value("swapFactor", p.swapFactor);
  p.version = j.value("version", p.version);
  return p;
}

std::string contentHash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string parametersHash(const AnalysisParameters& p) { return contentHash(toJson(p).dump()); }

void writeFileAtomic(const fs::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(tid) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

std::string readFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

Json readJson(const fs::path& path) {
  try {
    return Json::parse(readFile(path));
  } catch (const Json::exception& e) {
    throw IoError("corrupt cache file " + path.string() + ": " + e.what());
  }
}

}  // namespace

AnalysisCache::AnalysisCache(fs::path dir) : dir_(std::move(dir)) {}

AnalysisCache AnalysisCache::create(const fs::path& dir, const DatasetManifest& manifest,
                                    const AnalysisParameters& parameters,
                                    const DynamicNetwork& network) {
  fs::create_directories(dir);
  AnalysisCache cache(dir);
  std::size_t edges = 0;
  for (const auto& s : network.snapshots) edges += s.edgeCount();
  Json m = {{"dataset", toJson(manifest)},
            {"parameters", toJson(parameters)},
            {"parametersHash", parametersHash(parameters)},
            {"totals",
             {{"snapshots", network.size()},
              {"nodes", network.globalNodes.size()},
              {"edges", edges}}},
            {"formatVersion", kCacheFormatVersion}};
  writeFileAtomic(dir / "network.json", toJson(network).dump());
  writeFileAtomic(dir / "manifest.json", m.dump(2));
  // artifacts from an earlier ingest no longer describe this network
  for (const char* stale : {"census.json", "metrics.json", "layout.json"}) fs::remove(dir / stale);
  fs::remove_all(dir / "gdv");
  return cache;
}

bool AnalysisCache::exists() const { return fs::exists(dir_ / "manifest.json"); }

Json AnalysisCache::manifestJson() const { return readJson(dir_ / "manifest.json"); }

DatasetManifest AnalysisCache::datasetManifest() const {
  return manifestFromJson(manifestJson().at("dataset"));
}

AnalysisParameters AnalysisCache::parameters() const {
  return parametersFromJson(manifestJson().at("parameters"));
}

void AnalysisCache::updateParameters(const AnalysisParameters& p) {
  Json m = manifestJson();
  m["parameters"] = toJson(p);
  m["parametersHash"] = parametersHash(p);
  writeFileAtomic(dir_ / "manifest.json", m.dump(2));
}

DynamicNetwork AnalysisCache::loadNetwork() const { return networkFromJson(readJson(dir_ / "network.json")); }

bool AnalysisCache::hasCensus() const { return fs::exists(dir_ / "census.json"); }

CensusCacheEntry AnalysisCache::loadCensus() const {
  const Json j = readJson(dir_ / "census.json");
  CensusCacheEntry e;
  e.run.matrix = censusMatrixFromJson(j.at("matrix"));
  for (const auto& c : j.at("columns")) e.run.columns.push_back(censusVectorFromJson(c));
  e.parametersHash = j.at("parametersHash").get<std::string>();
  e.rngName = j.value("rng", std::string());
  e.seed = j.value("seed", std::uint64_t{0});
  return e;
}

void AnalysisCache::storeCensus(const CensusRun& run, const AnalysisParameters& p) {
  Json cols = Json::array();
  for (const auto& c : run.columns) cols.push_back(toJson(c));
  const Json j = {{"matrix", toJson(run.matrix)},
                  {"columns", std::move(cols)},
                  {"parameters", toJson(p)},
                  {"parametersHash", parametersHash(p)},
                  {"rng", kRngName},
                  {"seed", p.seed},
                  {"nullModel", "directed double-edge swap"}};
  writeFileAtomic(dir_ / "census.json", j.dump());
}

bool AnalysisCache::censusIsCurrent() const {
  if (!hasCensus()) return false;
  const Json j = readJson(dir_ / "census.json");
  return j.value("parametersHash", std::string()) ==
         manifestJson().value("parametersHash", std::string());
}

std::string AnalysisCache::censusFileHash() const { return contentHash(readFile(dir_ / "census.json")); }

std::optional<GdvMatrix> AnalysisCache::loadGdv(std::size_t snapshot, int maxSize) const {
  const fs::path p = dir_ / "gdv" / (std::to_string(snapshot) + "-" + std::to_string(maxSize) + ".json");
  if (!fs::exists(p)) return std::nullopt;
  return gdvFromJson(readJson(p));
}

void AnalysisCache::storeGdv(std::size_t snapshot, const GdvMatrix& m) {
  writeFileAtomic(dir_ / "gdv" / (std::to_string(snapshot) + "-" + std::to_string(m.maxGraphletSize) + ".json"),
                  toJson(m).dump());
}

std::optional<std::vector<NetworkMetrics>> AnalysisCache::loadMetrics() const {
  const fs::path p = dir_ / "metrics.json";
  if (!fs::exists(p)) return std::nullopt;
  const Json j = readJson(p);
  std::vector<NetworkMetrics> out;
  for (const auto& m : j.at("snapshots")) out.push_back(networkMetricsFromJson(m));
  return out;
}

void AnalysisCache::storeMetrics(const std::vector<NetworkMetrics>& metrics) {
  Json arr = Json::array();
  for (const auto& m : metrics) arr.push_back(toJson(m));
  writeFileAtomic(dir_ / "metrics.json", Json{{"snapshots", std::move(arr)}}.dump());
}

std::optional<std::map<NodeId, Point>> AnalysisCache::loadLayout() const {
  const fs::path p = dir_ / "layout.json";
  if (!fs::exists(p)) return std::nullopt;
  const Json j = readJson(p);
  std::map<NodeId, Point> out;
  for (const auto& [id, xy] : j.at("positions").items())
    out[id] = {xy.at(0).get<double>(), xy.at(1).get<double>()};
  return out;
}

void AnalysisCache::storeLayout(const std::vector<NodeId>& ids, const std::vector<Point>& positions) {
  Json pos = Json::object();
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = {positions[i].x, positions[i].y};
  writeFileAtomic(dir_ / "layout.json", Json{{"positions", std::move(pos)}}.dump());
}

fs::path defaultCacheRoot() {
  if (const char* env = std::getenv(kCacheRootEnv); env && *env) return env;
  return "netcensus-cache";
}

}  // namespace netcensus
