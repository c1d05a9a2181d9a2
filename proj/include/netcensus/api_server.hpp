#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "netcensus/analysis_cache.hpp"

namespace httplib {
class Server;
}

namespace netcensus {

inline constexpr int kApiSchemaVersion = 1;

// Fixed-size pool; tasks run in submission order.
class WorkerPool {
 public:
  explicit WorkerPool(unsigned workers);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  void submit(std::function<void()> task);
  // Blocks until the queue is empty and no task is running.
  void drain();

 private:
  void run();

  std::mutex mutex_;
  std::condition_variable wake_, idle_;
  std::deque<std::function<void()>> queue_;
  std::size_t active_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  Json body;
};

struct ServerOptions {
  unsigned workers = 2;
  // GDV requests on snapshots with more arcs than this run as background jobs
  // and answer 202 with a job id.
  std::size_t asyncGdvArcThreshold = 20000;
  std::size_t layoutIterations = 500;
  std::uint64_t layoutSeed = 1;
};

// Serves every dataset cache found directly under `root` (one subdirectory
// per dataset id). Responses depend only on cache contents and the request.
class ApiServer {
 public:
  explicit ApiServer(std::filesystem::path root, ServerOptions options = {});
  ~ApiServer();

  ApiResponse handle(const ApiRequest& request);

  // Blocking. Returns after stop().
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and serves on a background thread.
  int listenInBackground(const std::string& host = "127.0.0.1");
  void stop();

  void waitForJobs() { pool_.drain(); }

 private:
  struct Job {
    std::string status = "pending";  // pending, running, done, failed
    std::string resource;
    std::string error;
  };

  ApiResponse listDatasets();
  ApiResponse census(const std::string& id);
  ApiResponse censusView(const std::string& id, const std::string& body);
  ApiResponse gdv(const std::string& id, const std::string& t, const std::map<std::string, std::string>& query);
  ApiResponse gdvView(const std::string& id, const std::string& t, const std::string& body);
  ApiResponse graph(const std::string& id, const std::string& t);
  ApiResponse metrics(const std::string& id, const std::string& t);
  ApiResponse job(const std::string& id);

  AnalysisCache openCache(const std::string& id) const;
  std::mutex& keyLock(const std::string& key);
  GdvMatrix gdvFor(const AnalysisCache& cache, std::size_t t, int maxSize);
  std::vector<NetworkMetrics> metricsFor(const AnalysisCache& cache);
  std::map<NodeId, Point> layoutFor(const AnalysisCache& cache);

  std::filesystem::path root_;
  ServerOptions options_;
  WorkerPool pool_;
  std::mutex keysMutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> keyLocks_;
  std::mutex jobsMutex_;
  std::map<std::string, Job> jobs_;
  std::uint64_t nextJob_ = 1;
  std::unique_ptr<httplib::Server> http_;
  std::thread httpThread_;
};

}  // namespace netcensus
