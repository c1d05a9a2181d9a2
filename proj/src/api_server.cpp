#include "netcensus/api_server.hpp"

#include <algorithm>
#include <charconv>
#include <regex>

#include <httplib.h>

#include "netcensus/common.hpp"
#include "netcensus/graph_metrics.hpp"

namespace netcensus {
namespace fs = std::filesystem;

namespace {

struct HttpError {
  int status;
  std::string error;
  std::string detail;
};

[[noreturn]] void fail(int status, std::string error, std::string detail) {
  throw HttpError{status, std::move(error), std::move(detail)};
}

ApiResponse ok(Json body, int status = 200) {
  body["schemaVersion"] = kApiSchemaVersion;
  return {status, std::move(body)};
}

std::vector<std::string> splitPath(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto end = path.find('/', start);
    const auto piece = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!piece.empty()) parts.push_back(piece);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

bool validId(const std::string& id) {
  static const std::regex pattern("[A-Za-z0-9_.-]+");
  return id != "." && id != ".." && std::regex_match(id, pattern);
}

long long parseInteger(const std::string& text, const std::string& what) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) fail(400, "bad-parameter", what + " must be an integer, got '" + text + "'");
  return v;
}

Json parseBody(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) fail(400, "bad-request", "request body must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    fail(400, "bad-request", std::string("malformed JSON: ") + e.what());
  }
}

int intField(const Json& j, const char* key, int fallback, int minimum) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(400, "bad-parameter", std::string(key) + " must be an integer");
  const auto x = v.get<long long>();
  if (x < minimum || x > 1000000000) fail(400, "bad-parameter", std::string(key) + " out of range");
  return static_cast<int>(x);
}

std::string stringField(const Json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  if (!j.at(key).is_string()) fail(400, "bad-parameter", std::string(key) + " must be a string");
  return j.at(key).get<std::string>();
}

std::set<int> collapsedField(const Json& j) {
  if (!j.contains("collapsed") || j.at("collapsed").is_null()) return {};
  const auto& c = j.at("collapsed");
  if (!c.is_array()) fail(400, "bad-parameter", "collapsed must be an array of cluster ids");
  std::set<int> out;
  for (const auto& x : c) {
    if (!x.is_number_integer()) fail(400, "bad-parameter", "collapsed must be an array of cluster ids");
    out.insert(x.get<int>());
  }
  return out;
}

template <class F>
auto asBadRequest(F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    fail(400, "bad-parameter", e.what());
  }
}

std::size_t snapshotIndex(const DynamicNetwork& dn, const std::string& text) {
  const auto t = parseInteger(text, "snapshot index");
  if (t < 0 || static_cast<std::size_t>(t) >= dn.size())
    fail(404, "not-found", "snapshot " + text + " does not exist");
  return static_cast<std::size_t>(t);
}

int maxSizeOf(const std::string& text) {
  const auto k = parseInteger(text, "maxSize");
  if (k != 4 && k != 5) fail(400, "bad-parameter", "maxSize must be 4 or 5");
  return static_cast<int>(k);
}

void applyCollapsed(ViewState& state, std::set<int> collapsed) {
  for (int id : collapsed)
    if (!state.clusters || id < 0 || id >= state.clusters->clusterCount())
      fail(400, "bad-parameter", "cannot collapse unknown cluster " + std::to_string(id));
  state.collapsed = std::move(collapsed);
}

}  // namespace

WorkerPool::WorkerPool(unsigned workers) {
  for (unsigned i = 0; i < std::max(1u, workers); ++i) threads_.emplace_back([this] { run(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::submit(std::function<void()> task) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(task));
  }
  wake_.notify_one();
}

void WorkerPool::drain() {
  std::unique_lock lock(mutex_);
  idle_.wait(lock, [this] { return queue_.empty() && active_ == 0; });
}

void WorkerPool::run() {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      task = std::move(queue_.front());
      queue_.pop_front();
      ++active_;
    }
    task();
    {
      std::lock_guard lock(mutex_);
      --active_;
    }
    idle_.notify_all();
  }
}

ApiServer::ApiServer(fs::path root, ServerOptions options)
    : root_(std::move(root)), options_(options), pool_(options.workers) {}

ApiServer::~ApiServer() {
  stop();
  pool_.drain();
}

ApiResponse ApiServer::handle(const ApiRequest& request) {
  try {
    const auto p = splitPath(request.path);
    const bool get = request.method == "GET";
    const bool post = request.method == "POST";
    if (p.size() < 2 || p[0] != "api") fail(404, "not-found", "no route for " + request.path);
    if (p[1] == "jobs" && p.size() == 3 && get) return job(p[2]);
    if (p[1] != "datasets") fail(404, "not-found", "no route for " + request.path);
    if (p.size() == 2 && get) return listDatasets();
    if (p.size() >= 3 && !validId(p[2])) fail(404, "not-found", "unknown dataset '" + p[2] + "'");
    if (p.size() == 4 && p[3] == "census" && get) return census(p[2]);
    if (p.size() == 5 && p[3] == "census" && p[4] == "view" && post) return censusView(p[2], request.body);
    if (p.size() >= 6 && p[3] == "snapshots") {
      if (p.size() == 6 && p[5] == "gdv" && get) return gdv(p[2], p[4], request.query);
      if (p.size() == 7 && p[5] == "gdv" && p[6] == "view" && post) return gdvView(p[2], p[4], request.body);
      if (p.size() == 6 && p[5] == "graph" && get) return graph(p[2], p[4]);
      if (p.size() == 6 && p[5] == "metrics" && get) return metrics(p[2], p[4]);
    }
    fail(404, "not-found", "no route for " + request.method + " " + request.path);
  } catch (const HttpError& e) {
    return {e.status, {{"error", e.error}, {"detail", e.detail}}};
  } catch (const IoError& e) {
    return {500, {{"error", "cache-error"}, {"detail", e.what()}}};
  } catch (const std::exception& e) {
    return {500, {{"error", "internal"}, {"detail", e.what()}}};
  }
}

AnalysisCache ApiServer::openCache(const std::string& id) const {
  AnalysisCache cache(root_ / id);
  if (!cache.exists()) fail(404, "not-found", "unknown dataset '" + id + "'");
  return cache;
}

std::mutex& ApiServer::keyLock(const std::string& key) {
  std::lock_guard lock(keysMutex_);
  auto& m = keyLocks_[key];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

ApiResponse ApiServer::listDatasets() {
  std::vector<fs::path> dirs;
  if (fs::is_directory(root_))
    for (const auto& e : fs::directory_iterator(root_))
      if (e.is_directory() && fs::exists(e.path() / "manifest.json")) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  Json list = Json::array();
  for (const auto& d : dirs) {
    Json m = AnalysisCache(d).manifestJson();
    m["id"] = d.filename().string();
    m["censusAvailable"] = fs::exists(d / "census.json");
    list.push_back(std::move(m));
  }
  return ok({{"datasets", std::move(list)}});
}

ApiResponse ApiServer::census(const std::string& id) {
  const auto cache = openCache(id);
  if (!cache.hasCensus()) fail(404, "not-found", "census has not been computed for '" + id + "'");
  const auto entry = cache.loadCensus();
  const auto expected = cache.manifestJson().value("parametersHash", std::string());
  if (entry.parametersHash != expected)
    fail(409, "cache-mismatch", "census was computed with parameters " + entry.parametersHash +
                                    " but the manifest expects " + expected);
  Json body = toJson(entry.run.matrix);
  body["parametersHash"] = entry.parametersHash;
  body["rng"] = entry.rngName;
  body["seed"] = entry.seed;
  return ok(std::move(body));
}

ApiResponse ApiServer::censusView(const std::string& id, const std::string& rawBody) {
  const auto cache = openCache(id);
  const Json req = parseBody(rawBody);
  const std::string strategy = stringField(req, "strategy", "time");
  const std::string statistic = stringField(req, "statistic", "");
  const int epsTime = intField(req, "epsTime", kDefaultEpsTime, 0);
  const int minClusterSize = intField(req, "minClusterSize", kDefaultMinClusterSize, 2);
  const std::string metricName = stringField(req, "metric", "edgeCount");
  const ColumnOrder order = asBadRequest([&] { return parseColumnOrder(strategy); });
  if (order == ColumnOrder::NodeMetric) fail(400, "bad-parameter", "node-metric ordering applies to node-level views");

  if (!cache.hasCensus()) fail(404, "not-found", "census has not been computed for '" + id + "'");
  const auto entry = cache.loadCensus();
  if (entry.parametersHash != cache.manifestJson().value("parametersHash", std::string()))
    fail(409, "cache-mismatch", "census does not match the current manifest parameters");
  const DenseMatrix dm = toDense(entry.run.matrix);
  const auto& times = entry.run.matrix.times;

  ViewState state = identityView(dm.rows, dm.cols);
  ColumnStrategy cs;
  cs.order = order;
  if (order == ColumnOrder::ClusterThenTime) {
    const auto d = temporalFilter(distanceMatrix(dm.columns()), times, epsTime);
    auto clusters = clusterDensity(d, minClusterSize);
    clusters.epsTime = epsTime;
    state.clusters = std::move(clusters);
  } else if (order == ColumnOrder::NetworkMetric) {
    const auto m = metricsFor(cache);
    for (const auto& x : m) {
      if (metricName == "edgeCount") cs.metric.push_back(double(x.edgeCount));
      else if (metricName == "nodeCount") cs.metric.push_back(double(x.nodeCount));
      else if (metricName == "avgClusteringCoefficient") cs.metric.push_back(x.avgClusteringCoefficient);
      else fail(400, "bad-parameter", "unknown network metric '" + metricName + "'");
    }
  }
  state = orderColumns(state, cs, times);
  if (!statistic.empty())
    state = orderRows(state, asBadRequest([&] { return parseRowStatistic(statistic); }), dm);
  applyCollapsed(state, collapsedField(req));

  Json body = toJson(state);
  body["parameters"] = {{"strategy", strategy},
                        {"statistic", statistic.empty() ? Json(nullptr) : Json(statistic)},
                        {"epsTime", epsTime},
                        {"minClusterSize", minClusterSize},
                        {"metric", metricName}};
  return ok(std::move(body));
}

GdvMatrix ApiServer::gdvFor(const AnalysisCache& cache, std::size_t t, int maxSize) {
  if (auto m = cache.loadGdv(t, maxSize)) return *m;
  std::lock_guard lock(keyLock(cache.dir().string() + "#gdv/" + std::to_string(t) + "-" + std::to_string(maxSize)));
  if (auto m = cache.loadGdv(t, maxSize)) return *m;
  const auto dn = cache.loadNetwork();
  auto m = computeGdv(dn.snapshots[t], maxSize, 1);
  AnalysisCache(cache.dir()).storeGdv(t, m);
  return m;
}

ApiResponse ApiServer::gdv(const std::string& id, const std::string& tText,
                           const std::map<std::string, std::string>& query) {
  const auto cache = openCache(id);
  const auto dn = cache.loadNetwork();
  const auto t = snapshotIndex(dn, tText);
  const auto it = query.find("maxSize");
  const int maxSize = it == query.end() ? 4 : maxSizeOf(it->second);

  if (auto m = cache.loadGdv(t, maxSize)) return ok(toJson(*m));
  if (dn.snapshots[t].edgeCount() > options_.asyncGdvArcThreshold) {
    const std::string resource = "/api/datasets/" + id + "/snapshots/" + tText + "/gdv?maxSize=" + std::to_string(maxSize);
    std::string jobId;
    {
      std::lock_guard lock(jobsMutex_);
      for (const auto& [jid, j] : jobs_)
        if (j.resource == resource && (j.status == "pending" || j.status == "running")) jobId = jid;
      if (jobId.empty()) {
        jobId = "job-" + std::to_string(nextJob_++);
        jobs_[jobId].resource = resource;
        pool_.submit([this, jobId, dir = cache.dir(), t, maxSize] {
          {
            std::lock_guard lock(jobsMutex_);
            jobs_[jobId].status = "running";
          }
          std::string status = "done", error;
          try {
            gdvFor(AnalysisCache(dir), t, maxSize);
          } catch (const std::exception& e) {
            status = "failed";
            error = e.what();
          }
          std::lock_guard lock(jobsMutex_);
          jobs_[jobId].status = status;
          jobs_[jobId].error = error;
        });
      }
    }
    return ok({{"jobId", jobId}, {"status", "pending"}, {"poll", "/api/jobs/" + jobId}, {"resource", resource}}, 202);
  }
  return ok(toJson(gdvFor(cache, t, maxSize)));
}

ApiResponse ApiServer::gdvView(const std::string& id, const std::string& tText, const std::string& rawBody) {
  const auto cache = openCache(id);
  const Json req = parseBody(rawBody);
  const auto dn = cache.loadNetwork();
  const auto t = snapshotIndex(dn, tText);
  const std::string strategy = stringField(req, "strategy", "identity");
  const std::string statistic = stringField(req, "statistic", "");
  const std::string metricName = stringField(req, "metric", "pagerank");
  const int minClusterSize = intField(req, "minClusterSize", kDefaultMinClusterSize, 2);
  const int maxSize = maxSizeOf(std::to_string(intField(req, "maxSize", 4, 0)));

  const GdvMatrix m = gdvFor(cache, t, maxSize);
  const DenseMatrix dm = toDense(m);
  std::vector<int> positions(dm.cols);
  for (std::size_t i = 0; i < dm.cols; ++i) positions[i] = static_cast<int>(i);

  ViewState state = identityView(dm.rows, dm.cols);
  ColumnStrategy cs;
  if (strategy == "identity" || strategy == "time") {
    cs.order = ColumnOrder::Time;
  } else if (strategy == "cluster") {
    cs.order = ColumnOrder::ClusterThenTime;
    state.clusters = clusterDensity(distanceMatrix(dm.columns()), minClusterSize);
  } else if (strategy == "node-metric") {
    cs.order = ColumnOrder::NodeMetric;
    const auto& g = dn.snapshots[t];
    if (metricName == "pagerank") {
      cs.metric = nodeMetrics(g).pagerank;
    } else if (metricName == "degreeCentrality") {
      cs.metric = nodeMetrics(g).degreeCentrality;
    } else if (metricName == "degree") {
      for (std::size_t v = 0; v < g.nodeCount(); ++v)
        cs.metric.push_back(g.inDegree(int(v)) + g.outDegree(int(v)));
    } else {
      fail(400, "bad-parameter", "unknown node metric '" + metricName + "'");
    }
  } else {
    fail(400, "bad-parameter", "unknown strategy '" + strategy + "'");
  }
  state = orderColumns(state, cs, positions);
  if (!statistic.empty())
    state = orderRows(state, asBadRequest([&] { return parseRowStatistic(statistic); }), dm);
  applyCollapsed(state, collapsedField(req));

  Json body = toJson(state);
  body["nodes"] = m.nodeIds;
  body["parameters"] = {{"strategy", strategy},
                        {"statistic", statistic.empty() ? Json(nullptr) : Json(statistic)},
                        {"metric", metricName},
                        {"minClusterSize", minClusterSize},
                        {"maxSize", maxSize}};
  return ok(std::move(body));
}

std::vector<NetworkMetrics> ApiServer::metricsFor(const AnalysisCache& cache) {
  if (auto m = cache.loadMetrics()) return *m;
  std::lock_guard lock(keyLock(cache.dir().string() + "#metrics"));
  if (auto m = cache.loadMetrics()) return *m;
  const auto dn = cache.loadNetwork();
  std::vector<NetworkMetrics> out;
  out.reserve(dn.size());
  for (const auto& s : dn.snapshots) out.push_back(networkMetrics(s));
  AnalysisCache(cache.dir()).storeMetrics(out);
  return out;
}

std::map<NodeId, Point> ApiServer::layoutFor(const AnalysisCache& cache) {
  if (auto l = cache.loadLayout()) return *l;
  std::lock_guard lock(keyLock(cache.dir().string() + "#layout"));
  if (auto l = cache.loadLayout()) return *l;
  const Snapshot sg = supergraph(cache.loadNetwork());
  const auto pos = forceLayout(sg, options_.layoutIterations, options_.layoutSeed);
  AnalysisCache(cache.dir()).storeLayout(sg.nodes(), pos);
  std::map<NodeId, Point> out;
  for (std::size_t i = 0; i < pos.size(); ++i) out[sg.nodes()[i]] = pos[i];
  return out;
}

ApiResponse ApiServer::graph(const std::string& id, const std::string& tText) {
  const auto cache = openCache(id);
  const auto dn = cache.loadNetwork();
  const auto t = snapshotIndex(dn, tText);
  const Snapshot& g = dn.snapshots[t];
  const auto layout = layoutFor(cache);
  const auto nm = nodeMetrics(g);

  Json nodes = Json::array();
  for (std::size_t v = 0; v < g.nodeCount(); ++v) {
    const auto& nid = g.nodes()[v];
    const auto p = layout.find(nid);
    nodes.push_back({{"id", nid},
                     {"x", p == layout.end() ? 0.0 : p->second.x},
                     {"y", p == layout.end() ? 0.0 : p->second.y},
                     {"inDegree", g.inDegree(int(v))},
                     {"outDegree", g.outDegree(int(v))},
                     {"pagerank", nm.pagerank[v]},
                     {"degreeCentrality", nm.degreeCentrality[v]}});
  }
  Json edges = Json::array();
  for (const auto& [s, d] : g.edgeIds()) edges.push_back({{"source", s}, {"target", d}});

  Json body = {{"snapshot", t},
               {"interval", {g.interval().start, g.interval().end}},
               {"nodes", std::move(nodes)},
               {"edges", std::move(edges)},
               {"communities", nullptr}};
  if (g.nodeCount() > kCommunityNodeThreshold) {
    const auto part = communities(g);
    body["communities"] = toJson(part, g.nodes());
    for (std::size_t v = 0; v < g.nodeCount(); ++v) body["nodes"][v]["community"] = part.assignment[v];
  }
  return ok(std::move(body));
}

ApiResponse ApiServer::metrics(const std::string& id, const std::string& tText) {
  const auto cache = openCache(id);
  const auto dn = cache.loadNetwork();
  const auto t = snapshotIndex(dn, tText);
  Json body = toJson(metricsFor(cache)[t]);
  body["snapshot"] = t;
  return ok(std::move(body));
}

ApiResponse ApiServer::job(const std::string& id) {
  std::lock_guard lock(jobsMutex_);
  const auto it = jobs_.find(id);
  if (it == jobs_.end()) fail(404, "not-found", "unknown job '" + id + "'");
  Json body = {{"jobId", id}, {"status", it->second.status}, {"resource", it->second.resource}};
  if (!it->second.error.empty()) body["detail"] = it->second.error;
  return ok(std::move(body));
}

namespace {

void installRoutes(httplib::Server& http, ApiServer& api) {
  auto dispatch = [&api](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    const auto out = api.handle(r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  http.Get(R"(/.*)", dispatch);
  http.Post(R"(/.*)", dispatch);
}

}  // namespace

bool ApiServer::listen(const std::string& host, int port) {
  http_ = std::make_unique<httplib::Server>();
  installRoutes(*http_, *this);
  return http_->listen(host, port);
}

int ApiServer::listenInBackground(const std::string& host) {
  http_ = std::make_unique<httplib::Server>();
  installRoutes(*http_, *this);
  const int port = http_->bind_to_any_port(host);
  if (port < 0) throw IoError("cannot bind " + host);
  httpThread_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
  return port;
}

void ApiServer::stop() {
  if (http_) http_->stop();
  if (httpThread_.joinable()) httpThread_.join();
}

}  // namespace netcensus
