#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <future>

#include <httplib.h>

#include "fixture_dataset.hpp"
#include "netcensus/api_server.hpp"

using namespace netcensus;
namespace fs = std::filesystem;

namespace {

const Json& schema() {
  static const Json s = Json::parse(std::ifstream(std::string(NETCENSUS_FIXTURES) + "/api_schema.json"));
  return s;
}

bool hasType(const Json& v, const std::string& types) {
  std::size_t start = 0;
  while (start <= types.size()) {
    const auto end = std::min(types.find('|', start), types.size());
    const auto t = types.substr(start, end - start);
    if ((t == "array" && v.is_array()) || (t == "object" && v.is_object()) ||
        (t == "integer" && v.is_number_integer()) || (t == "number" && v.is_number()) ||
        (t == "string" && v.is_string()) || (t == "boolean" && v.is_boolean()) || (t == "null" && v.is_null()))
      return true;
    start = end + 1;
  }
  return false;
}

::testing::AssertionResult matches(const Json& body, const std::string& name) {
  for (const auto& [key, type] : schema().at(name).items()) {
    if (!body.contains(key)) return ::testing::AssertionFailure() << name << ": missing " << key;
    if (!hasType(body.at(key), type.get<std::string>()))
      return ::testing::AssertionFailure() << name << ": " << key << " is not " << type;
  }
  return ::testing::AssertionSuccess();
}

class ApiTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / "netcensus_api_test";
    fs::remove_all(root_);
    fixture::writeApiDataset(root_);
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }

  ApiResponse get(ApiServer& s, const std::string& path, std::map<std::string, std::string> q = {}) {
    return s.handle({"GET", path, std::move(q), ""});
  }
  ApiResponse post(ApiServer& s, const std::string& path, const std::string& body) {
    return s.handle({"POST", path, {}, body});
  }

  static fs::path root_;
};

fs::path ApiTest::root_;

}  // namespace

TEST_F(ApiTest, ListsDatasets) {
  ApiServer s(root_);
  const auto r = get(s, "/api/datasets");
  ASSERT_EQ(r.status, 200);
  EXPECT_TRUE(matches(r.body, "datasets"));
  ASSERT_EQ(r.body["datasets"].size(), 1u);
  EXPECT_TRUE(matches(r.body["datasets"][0], "dataset"));
  EXPECT_EQ(r.body["datasets"][0]["totals"]["snapshots"], 4);
}

TEST_F(ApiTest, CensusHasThirteenRowsPerSnapshot) {
  ApiServer s(root_);
  const auto r = get(s, "/api/datasets/fixture/census");
  ASSERT_EQ(r.status, 200);
  EXPECT_TRUE(matches(r.body, "census"));
  EXPECT_EQ(r.body["values"].size(), 52u);
  EXPECT_EQ(r.body["motifs"].size(), 13u);
  EXPECT_EQ(r.body["times"], Json({0, 1, 2, 3}));
}

TEST_F(ApiTest, ViewAppliesDefaults) {
  ApiServer s(root_);
  const auto r = post(s, "/api/datasets/fixture/census/view", R"({"strategy":"cluster","statistic":"median"})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_TRUE(matches(r.body, "view"));
  EXPECT_EQ(r.body["parameters"]["epsTime"], 10);
  EXPECT_EQ(r.body["parameters"]["minClusterSize"], 5);
  EXPECT_EQ(r.body["clusters"]["parameters"]["epsTime"], 10);
  EXPECT_EQ(r.body["colPermutation"].size(), 4u);
  EXPECT_EQ(r.body["rowPermutation"].size(), 13u);

  const auto explicitEps = post(s, "/api/datasets/fixture/census/view", R"({"strategy":"cluster","epsTime":3,"minClusterSize":2})");
  ASSERT_EQ(explicitEps.status, 200);
  EXPECT_EQ(explicitEps.body["parameters"]["epsTime"], 3);
  const auto empty = post(s, "/api/datasets/fixture/census/view", "");
  ASSERT_EQ(empty.status, 200);
  EXPECT_EQ(empty.body["colPermutation"], Json({0, 1, 2, 3}));
}

TEST_F(ApiTest, ViewIsIdempotent) {
  ApiServer s(root_);
  const std::string body = R"({"strategy":"network-metric","metric":"edgeCount","statistic":"variance"})";
  const auto a = post(s, "/api/datasets/fixture/census/view", body);
  const auto b = post(s, "/api/datasets/fixture/census/view", body);
  ASSERT_EQ(a.status, 200);
  EXPECT_EQ(a.body, b.body);
}

TEST_F(ApiTest, RejectsBadParameters) {
  ApiServer s(root_);
  for (const char* body : {R"({"epsTime":-1})", R"({"minClusterSize":1})", R"({"strategy":"sideways"})",
                           R"({"statistic":"mode"})", R"({"epsTime":"ten"})", "not json",
                           R"({"collapsed":[0]})"}) {
    const auto r = post(s, "/api/datasets/fixture/census/view", body);
    EXPECT_EQ(r.status, 400) << body;
    EXPECT_TRUE(matches(r.body, "error"));
  }
  EXPECT_EQ(get(s, "/api/datasets/fixture/snapshots/0/gdv", {{"maxSize", "6"}}).status, 400);
  EXPECT_EQ(get(s, "/api/datasets/fixture/snapshots/x/metrics").status, 400);
}

TEST_F(ApiTest, UnknownIdsAre404WithJsonBody) {
  ApiServer s(root_);
  for (const auto& path : {"/api/datasets/nope/census", "/api/datasets/fixture/snapshots/9/graph",
                           "/api/jobs/job-404", "/api/other", "/api/datasets/../census"}) {
    const auto r = get(s, path);
    EXPECT_EQ(r.status, 404) << path;
    EXPECT_TRUE(matches(r.body, "error"));
  }
}

TEST_F(ApiTest, GraphCommunitiesOnlyAboveHundredNodes) {
  ApiServer s(root_);
  const auto big = get(s, "/api/datasets/fixture/snapshots/0/graph");
  ASSERT_EQ(big.status, 200) << big.body.dump();
  EXPECT_TRUE(matches(big.body, "graph"));
  EXPECT_EQ(big.body["nodes"].size(), 150u);
  ASSERT_TRUE(big.body["communities"].is_object());
  EXPECT_GE(big.body["communities"]["count"].get<int>(), 2);
  EXPECT_TRUE(big.body["nodes"][0].contains("community"));
  EXPECT_TRUE(matches(big.body["nodes"][0], "graphNode"));

  const auto small = get(s, "/api/datasets/fixture/snapshots/1/graph");
  ASSERT_EQ(small.status, 200);
  EXPECT_LE(small.body["nodes"].size(), 100u);
  EXPECT_TRUE(small.body["communities"].is_null());
  EXPECT_TRUE(fs::exists(root_ / "fixture" / "layout.json"));
}

TEST_F(ApiTest, GdvIsComputedOnceAndCached) {
  ApiServer s(root_);
  const auto file = root_ / "fixture" / "gdv" / "2-4.json";
  fs::remove(file);
  std::vector<std::future<ApiResponse>> calls;
  for (int i = 0; i < 4; ++i)
    calls.push_back(std::async(std::launch::async, [&] { return get(s, "/api/datasets/fixture/snapshots/2/gdv"); }));
  std::vector<Json> bodies;
  for (auto& c : calls) {
    const auto r = c.get();
    ASSERT_EQ(r.status, 200);
    bodies.push_back(r.body);
  }
  for (const auto& b : bodies) EXPECT_EQ(b, bodies.front());
  EXPECT_TRUE(matches(bodies.front(), "gdv"));
  EXPECT_EQ(bodies.front()["orbits"], 15);
  EXPECT_TRUE(fs::exists(file));
}

TEST_F(ApiTest, GdvViewStrategies) {
  ApiServer s(root_);
  for (const char* body : {R"({})", R"({"strategy":"cluster","minClusterSize":3})",
                           R"({"strategy":"node-metric","metric":"pagerank","statistic":"max"})"}) {
    const auto r = post(s, "/api/datasets/fixture/snapshots/1/gdv/view", body);
    ASSERT_EQ(r.status, 200) << body << r.body.dump();
    EXPECT_TRUE(matches(r.body, "gdvView"));
    EXPECT_EQ(r.body["colPermutation"].size(), r.body["nodes"].size());
  }
  EXPECT_EQ(post(s, "/api/datasets/fixture/snapshots/1/gdv/view", R"({"strategy":"node-metric","metric":"age"})").status, 400);
}

TEST_F(ApiTest, MetricsEndpoint) {
  ApiServer s(root_);
  const auto r = get(s, "/api/datasets/fixture/snapshots/0/metrics");
  ASSERT_EQ(r.status, 200);
  EXPECT_TRUE(matches(r.body, "metrics"));
  EXPECT_EQ(r.body["nodeCount"], 150);
}

TEST_F(ApiTest, LargeGdvRunsAsJob) {
  ServerOptions o;
  o.asyncGdvArcThreshold = 0;
  ApiServer s(root_, o);
  fs::remove(root_ / "fixture" / "gdv" / "3-5.json");
  const auto r = get(s, "/api/datasets/fixture/snapshots/3/gdv", {{"maxSize", "5"}});
  ASSERT_EQ(r.status, 202);
  const std::string id = r.body["jobId"];
  s.waitForJobs();
  const auto j = get(s, "/api/jobs/" + id);
  ASSERT_EQ(j.status, 200);
  EXPECT_TRUE(matches(j.body, "job"));
  EXPECT_EQ(j.body["status"], "done");
  const auto done = get(s, "/api/datasets/fixture/snapshots/3/gdv", {{"maxSize", "5"}});
  EXPECT_EQ(done.status, 200);
  EXPECT_EQ(done.body["orbits"], 73);
}

TEST_F(ApiTest, ManifestMismatchIs409) {
  const auto dir = fs::temp_directory_path() / "netcensus_api_mismatch";
  fs::remove_all(dir);
  const auto ds = fixture::writeApiDataset(dir, "m", 2);
  AnalysisCache cache(ds);
  auto p = cache.parameters();
  p.seed = 99;
  cache.updateParameters(p);
  ApiServer s(dir);
  EXPECT_EQ(get(s, "/api/datasets/m/census").status, 409);
  EXPECT_EQ(post(s, "/api/datasets/m/census/view", "{}").status, 409);
  fs::remove_all(dir);
}

TEST_F(ApiTest, ServesOverHttp) {
  ApiServer s(root_);
  const int port = s.listenInBackground();
  httplib::Client client("127.0.0.1", port);
  const auto census = client.Get("/api/datasets/fixture/census");
  ASSERT_TRUE(census);
  EXPECT_EQ(census->status, 200);
  EXPECT_EQ(census->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(Json::parse(census->body)["values"].size(), 52u);
  const auto view = client.Post("/api/datasets/fixture/census/view", R"({"strategy":"time"})", "application/json");
  ASSERT_TRUE(view);
  EXPECT_EQ(view->status, 200);
  const auto missing = client.Get("/api/datasets/none/census");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(Json::parse(missing->body)["error"], "not-found");
  s.stop();
}
