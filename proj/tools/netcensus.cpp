#include <csignal>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "netcensus/analysis_cache.hpp"
#include "netcensus/api_server.hpp"
#include "netcensus/pixel_render.hpp"

using namespace netcensus;
namespace fs = std::filesystem;

namespace {

char delimiterFrom(const std::string& s) {
  if (s == "\\t" || s == "tab") return '\t';
  if (s == "space" || s == " ") return ' ';
  if (s.size() != 1) throw InvalidArgument("delimiter must be one character, 'tab' or 'space'");
  return s[0];
}

HeaderMode headerFrom(const std::string& s) {
  if (s == "auto") return HeaderMode::Auto;
  if (s == "yes" || s == "present") return HeaderMode::Present;
  if (s == "no" || s == "absent") return HeaderMode::Absent;
  throw InvalidArgument("header must be auto, yes or no");
}

Normalization normalizationFrom(const std::string& s) {
  if (s == "none") return Normalization::None;
  if (s == "row") return Normalization::PerRow;
  if (s == "global") return Normalization::Global;
  throw InvalidArgument("normalize must be none, row or global");
}

AnalysisCache openCache(const std::string& dir) {
  AnalysisCache cache(dir);
  if (!cache.exists()) throw IoError("no dataset cache at " + dir + " (run ingest first)");
  return cache;
}

struct IngestArgs {
  std::string edges, out, id, manifest, delimiter = ",", header = "auto";
  Timestamp bin = 86400;
  int sourceCol = 0, targetCol = 1, timeCol = 2;
};

int runIngest(const IngestArgs& a, const CLI::App& cmd) {
  DatasetManifest m;
  if (!a.manifest.empty()) {
    m = loadManifest(a.manifest);
    if (!a.edges.empty()) m.path = a.edges;
    if (cmd.count("--bin")) m.binWidth = a.bin;
    if (!a.id.empty()) m.id = a.id;
  } else {
    if (a.edges.empty()) throw InvalidArgument("an edge file or --manifest is required");
    m.path = a.edges;
    m.binWidth = a.bin;
    m.id = a.id.empty() ? fs::path(a.edges).stem().string() : a.id;
    m.format.delimiter = delimiterFrom(a.delimiter);
    m.format.sourceColumn = a.sourceCol;
    m.format.targetColumn = a.targetCol;
    m.format.timestampColumn = a.timeCol;
    m.format.header = headerFrom(a.header);
  }
  if (m.binWidth <= 0) throw InvalidArgument("bin width must be positive");
  const auto edges = ingest(m.path, m.format);
  const auto dn = discretize(edges, m.binWidth, m.id);
  const fs::path out = a.out.empty() ? defaultCacheRoot() / m.id : fs::path(a.out);
  AnalysisParameters p;
  p.binWidth = m.binWidth;
  AnalysisCache::create(out, m, p, dn);

  std::size_t arcs = 0;
  for (const auto& s : dn.snapshots) arcs += s.edgeCount();
  std::cout << dn.size() << " snapshots, " << dn.globalNodes.size() << " nodes, " << arcs << " edges\n";
  std::cout << "rows: " << edges.edges.size() << " read, " << edges.malformedRows << " malformed\n";
  std::cout << "cache: " << out.string() << "\n";
  return 0;
}

struct CensusArgs {
  std::string cache;
  std::size_t nulls = 100;
  std::uint64_t seed = 1;
  double swaps = 10.0;
  unsigned threads = 0;
};

int runCensus(const CensusArgs& a) {
  auto cache = openCache(a.cache);
  auto p = cache.parameters();
  p.nullCount = a.nulls;
  p.seed = a.seed;
  p.swapFactor = a.swaps;
  cache.updateParameters(p);
  const auto dn = cache.loadNetwork();
  CensusOptions o;
  o.nullCount = a.nulls;
  o.seed = a.seed;
  o.swapFactor = a.swaps;
  o.threads = a.threads;
  cache.storeCensus(buildCensus(dn, o), p);
  std::cout << "census " << dn.size() << " snapshots, " << a.nulls << " null models, seed " << a.seed << "\n";
  std::cout << "hash " << cache.censusFileHash() << "\n";
  return 0;
}

struct RenderArgs {
  std::string cache, view = "census", svg, png, sortRows, sortCols = "time", metric, normalize, title;
  std::size_t t = 0;
  bool cluster = false;
  int epsTime = kDefaultEpsTime, minClusterSize = kDefaultMinClusterSize, maxSize = 4, cell = 12;
  std::vector<int> collapse;
};

int runRender(const RenderArgs& a) {
  if (a.svg.empty() && a.png.empty()) throw InvalidArgument("give --svg and/or --png");
  const auto cache = openCache(a.cache);
  const ColumnOrder order = a.cluster ? ColumnOrder::ClusterThenTime : parseColumnOrder(a.sortCols);
  DenseMatrix dm;
  std::vector<int> times;
  ColorScale scale;
  RenderOptions ro;
  ro.cellSize = a.cell;
  ColumnStrategy cs;
  cs.order = order;
  std::optional<ClusterAssignment> clusters;

  if (a.view == "census") {
    if (!cache.censusIsCurrent()) throw Error("census missing or stale for these parameters (run census)");
    const auto entry = cache.loadCensus();
    dm = toDense(entry.run.matrix);
    times = entry.run.matrix.times;
    scale = divergingScale();
    ro.normalization = normalizationFrom(a.normalize.empty() ? "none" : a.normalize);
    if (order == ColumnOrder::ClusterThenTime) {
      auto c = clusterDensity(temporalFilter(distanceMatrix(dm.columns()), times, a.epsTime), a.minClusterSize);
      c.epsTime = a.epsTime;
      clusters = std::move(c);
    } else if (order == ColumnOrder::NetworkMetric) {
      const auto dn = cache.loadNetwork();
      for (const auto& s : dn.snapshots) {
        const auto m = networkMetrics(s);
        cs.metric.push_back(a.metric == "avgClusteringCoefficient" ? m.avgClusteringCoefficient
                                                                    : double(m.edgeCount));
      }
    } else if (order == ColumnOrder::NodeMetric) {
      throw InvalidArgument("node-metric ordering applies to the gdv view");
    }
    ro.title = a.title.empty() ? "triad census" : a.title;
  } else if (a.view == "gdv") {
    const auto dn = cache.loadNetwork();
    if (a.t >= dn.size()) throw InvalidArgument("snapshot " + std::to_string(a.t) + " out of range");
    const auto& g = dn.snapshots[a.t];
    GdvMatrix m;
    if (auto cached = cache.loadGdv(a.t, a.maxSize)) {
      m = *cached;
    } else {
      m = computeGdv(g, a.maxSize);
      AnalysisCache(cache.dir()).storeGdv(a.t, m);
    }
    dm = toDense(m);
    for (std::size_t i = 0; i < dm.cols; ++i) times.push_back(int(i));
    scale = grayscaleScale();
    ro.normalization = normalizationFrom(a.normalize.empty() ? "row" : a.normalize);
    if (order == ColumnOrder::ClusterThenTime) {
      clusters = clusterDensity(distanceMatrix(dm.columns()), a.minClusterSize);
    } else if (order == ColumnOrder::NodeMetric) {
      const auto nm = nodeMetrics(g);
      cs.metric = a.metric == "degreeCentrality" ? nm.degreeCentrality : nm.pagerank;
    } else if (order == ColumnOrder::NetworkMetric) {
      throw InvalidArgument("network-metric ordering applies to the census view");
    }
    ro.title = a.title.empty() ? "graphlet degree vectors, snapshot " + std::to_string(a.t) : a.title;
  } else {
    throw InvalidArgument("view must be census or gdv");
  }

  ViewState state = identityView(dm.rows, dm.cols);
  state.clusters = clusters;
  state = orderColumns(state, cs, times);
  if (!a.sortRows.empty()) state = orderRows(state, parseRowStatistic(a.sortRows), dm);
  for (int id : a.collapse) {
    if (!state.clusters || id < 0 || id >= state.clusters->clusterCount())
      throw InvalidArgument("cannot collapse unknown cluster " + std::to_string(id));
    state.collapsed.insert(id);
  }
  const auto vm = buildViewModel(dm, state, scale, ro);
  if (!a.svg.empty()) exportSvg(vm, a.svg);
  if (!a.png.empty()) exportPng(vm, a.png);
  std::cout << dm.rows << " x " << dm.cols << " cells";
  if (state.clusters) std::cout << ", " << state.clusters->clusterCount() << " clusters, " << state.clusters->noiseCount() << " noise";
  std::cout << "\n";
  return 0;
}

struct ExportArgs {
  std::string cache, what = "census", csv;
  std::size_t t = 0;
  int maxSize = 4;
};

int runExport(const ExportArgs& a) {
  const auto cache = openCache(a.cache);
  std::string text;
  if (a.what == "census") {
    if (!cache.censusIsCurrent()) throw Error("census missing or stale for these parameters (run census)");
    text = toCsv(cache.loadCensus().run.matrix);
  } else if (a.what == "gdv") {
    auto m = cache.loadGdv(a.t, a.maxSize);
    if (!m) {
      const auto dn = cache.loadNetwork();
      if (a.t >= dn.size()) throw InvalidArgument("snapshot out of range");
      m = computeGdv(dn.snapshots[a.t], a.maxSize);
    }
    text = toCsv(*m);
  } else {
    throw InvalidArgument("export target must be census or gdv");
  }
  if (a.csv.empty() || a.csv == "-") std::cout << text;
  else writeFileAtomic(a.csv, text);
  return 0;
}

ApiServer* activeServer = nullptr;

int runServe(const std::string& root, const std::string& host, int port, unsigned workers) {
  ServerOptions o;
  o.workers = workers;
  ApiServer server(root.empty() ? defaultCacheRoot() : fs::path(root), o);
  activeServer = &server;
  std::signal(SIGINT, [](int) { if (activeServer) activeServer->stop(); });
  std::signal(SIGTERM, [](int) { if (activeServer) activeServer->stop(); });
  std::cerr << "serving on http://" << host << ":" << port << "\n";
  const bool ok = server.listen(host, port);
  activeServer = nullptr;
  if (!ok) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic network census: ingest, census, render, serve"};
  app.require_subcommand(1);

  IngestArgs ia;
  auto* ingestCmd = app.add_subcommand("ingest", "Parse an edge list into a dataset cache");
  ingestCmd->add_option("edges", ia.edges, "Delimited edge file (source, target, timestamp)");
  ingestCmd->add_option("--bin", ia.bin, "Snapshot width in seconds")->check(CLI::PositiveNumber);
  ingestCmd->add_option("--out", ia.out, "Cache directory (default $NETCENSUS_CACHE/<id>)");
  ingestCmd->add_option("--id", ia.id, "Dataset id (default: file stem)");
  ingestCmd->add_option("--manifest", ia.manifest, "Dataset manifest JSON");
  ingestCmd->add_option("--delimiter", ia.delimiter, "Field delimiter: a character, tab or space");
  ingestCmd->add_option("--source-col", ia.sourceCol)->check(CLI::NonNegativeNumber);
  ingestCmd->add_option("--target-col", ia.targetCol)->check(CLI::NonNegativeNumber);
  ingestCmd->add_option("--time-col", ia.timeCol)->check(CLI::NonNegativeNumber);
  ingestCmd->add_option("--header", ia.header, "auto, yes or no");

  CensusArgs ca;
  auto* censusCmd = app.add_subcommand("census", "Compute significance profiles for every snapshot");
  censusCmd->add_option("--cache", ca.cache, "Dataset cache directory")->required();
  censusCmd->add_option("--nulls", ca.nulls, "Null models per snapshot")->check(CLI::PositiveNumber);
  censusCmd->add_option("--seed", ca.seed, "Random seed");
  censusCmd->add_option("--swaps", ca.swaps, "Swap attempts per arc")->check(CLI::NonNegativeNumber);
  censusCmd->add_option("--threads", ca.threads, "Worker threads (0 = all cores)");

  RenderArgs ra;
  auto* renderCmd = app.add_subcommand("render", "Draw the census or a GDV matrix as a pixel view");
  renderCmd->add_option("--cache", ra.cache, "Dataset cache directory")->required();
  renderCmd->add_option("--view", ra.view, "census or gdv");
  renderCmd->add_option("--t", ra.t, "Snapshot for the gdv view");
  renderCmd->add_option("--svg", ra.svg, "SVG output path");
  renderCmd->add_option("--png", ra.png, "PNG output path");
  renderCmd->add_flag("--cluster", ra.cluster, "Cluster columns (same as --sort-cols cluster)");
  renderCmd->add_option("--eps-time", ra.epsTime, "Temporal filter for census clustering")->check(CLI::NonNegativeNumber);
  renderCmd->add_option("--min-cluster-size", ra.minClusterSize)->check(CLI::Range(2, 1 << 30));
  renderCmd->add_option("--sort-rows", ra.sortRows, "mean, median, min, max, variance or std");
  renderCmd->add_option("--sort-cols", ra.sortCols, "time, cluster, network-metric or node-metric");
  renderCmd->add_option("--metric", ra.metric, "edgeCount, avgClusteringCoefficient, pagerank, degreeCentrality");
  renderCmd->add_option("--collapse", ra.collapse, "Collapse a cluster id (repeatable)");
  renderCmd->add_option("--max-size", ra.maxSize, "Largest graphlet size")->check(CLI::IsMember({4, 5}));
  renderCmd->add_option("--cell", ra.cell, "Cell size in pixels")->check(CLI::Range(1, 256));
  renderCmd->add_option("--normalize", ra.normalize, "none, row or global");
  renderCmd->add_option("--title", ra.title);

  ExportArgs ea;
  auto* exportCmd = app.add_subcommand("export", "Write a census or GDV matrix as CSV");
  exportCmd->add_option("--cache", ea.cache, "Dataset cache directory")->required();
  exportCmd->add_option("what", ea.what, "census or gdv");
  exportCmd->add_option("--t", ea.t);
  exportCmd->add_option("--max-size", ea.maxSize)->check(CLI::IsMember({4, 5}));
  exportCmd->add_option("--csv", ea.csv, "Output path (default stdout)");

  std::string root, host = "127.0.0.1";
  int port = 8080;
  unsigned workers = 2;
  auto* serveCmd = app.add_subcommand("serve", "Serve dataset caches over HTTP");
  serveCmd->add_option("--root", root, "Directory holding dataset caches (default $NETCENSUS_CACHE)");
  serveCmd->add_option("--host", host);
  serveCmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serveCmd->add_option("--workers", workers)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingestCmd) return runIngest(ia, *ingestCmd);
    if (*censusCmd) return runCensus(ca);
    if (*renderCmd) return runRender(ra);
    if (*exportCmd) return runExport(ea);
    if (*serveCmd) return runServe(root, host, port, workers);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
