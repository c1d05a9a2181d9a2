#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>

#include "netcensus/common.hpp"
#include "netcensus/pixel_render.hpp"

using namespace netcensus;

namespace {

DenseMatrix sample(std::size_t rows, std::size_t cols) {
  DenseMatrix m;
  m.rows = rows;
  m.cols = cols;
  for (std::size_t i = 0; i < rows * cols; ++i) m.values.push_back(std::sin(double(i)));
  for (std::size_t r = 0; r < rows; ++r) m.rowLabels.push_back("r" + std::to_string(r));
  for (std::size_t c = 0; c < cols; ++c) m.colLabels.push_back(std::to_string(c));
  return m;
}

ViewState withClusters(std::size_t rows, const std::vector<int>& labels) {
  ViewState s = identityView(rows, labels.size());
  ClusterAssignment c;
  c.labels = labels;
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  for (int i = 0; i < k; ++i) c.clusterOrder.push_back(i);
  s.clusters = c;
  return s;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(ColorScale, DivergingAnchorsExact) {
  const auto s = divergingScale();
  EXPECT_EQ(colorOf(s, -1.0), kDivergingLow);
  EXPECT_EQ(colorOf(s, 0.0), kDivergingMid);
  EXPECT_EQ(colorOf(s, 1.0), kDivergingHigh);
  EXPECT_EQ(colorOf(s, -7.0), kDivergingLow);
  EXPECT_EQ(colorOf(s, 3.0), kDivergingHigh);
  EXPECT_EQ(kDivergingLow.hex(), "#67001F");
}

TEST(ColorScale, GrayscaleEndpointsAndMidpoint) {
  const auto s = grayscaleScale();
  EXPECT_EQ(colorOf(s, 0.0), kWhite);
  EXPECT_EQ(colorOf(s, 1.0), kBlack);
  // 255 * 0.5 = 127.5 rounds half up
  EXPECT_EQ(colorOf(s, 0.5), (Rgb{128, 128, 128}));
  EXPECT_THROW(colorOf(s, std::nan("")), InvalidArgument);
}

TEST(ColorScale, RedChannelFallsTowardsMotifEnd) {
  const auto s = divergingScale();
  int previous = 256;
  for (int i = 0; i <= 100; ++i) {
    const int r = colorOf(s, i / 100.0).r;
    EXPECT_LE(r, previous);
    previous = r;
  }
  EXPECT_EQ(parseHex("#053061"), kDivergingHigh);
  EXPECT_THROW(parseHex("053061"), InvalidArgument);
}

TEST(ViewModel, IdentityGridGeometry) {
  const auto m = sample(3, 4);
  const auto vm = buildViewModel(m, identityView(3, 4), divergingScale(), {10});
  EXPECT_EQ(vm.cells.size(), 12u);
  EXPECT_EQ(vm.gridWidth, 40);
  EXPECT_EQ(vm.gridHeight, 30);
  EXPECT_EQ(vm.gapCount, 0u);
  EXPECT_EQ(vm.cells[0].x, vm.originX);
  EXPECT_EQ(vm.cells[1].y, vm.originY + 10);
  EXPECT_EQ(vm.cells[3].col, 1u);
  EXPECT_EQ(vm.cells[3].label, "r0, 1");
}

TEST(ViewModel, ClusterBoundariesOpenGaps) {
  const auto m = sample(2, 6);
  const auto vm = buildViewModel(m, withClusters(2, {0, 0, 1, 1, kNoise, kNoise}), divergingScale(), {10});
  EXPECT_EQ(vm.gapCount, 2u);
  EXPECT_EQ(vm.gridWidth, 6 * 10 + 2 * kClusterGapCells * 10);
  EXPECT_EQ(vm.cells[4].x - vm.cells[2].x, 10 + kClusterGapCells * 10);
}

TEST(ViewModel, CollapsedClusterShowsPlaceholder) {
  std::vector<int> labels(10, 0);
  auto state = withClusters(2, labels);
  state.collapsed = {0};
  const auto vm = buildViewModel(sample(2, 10), state, divergingScale(), {8});
  EXPECT_EQ(vm.cells.size(), 12u);
  ASSERT_EQ(vm.placeholders.size(), 1u);
  EXPECT_EQ(vm.placeholders[0].hiddenCount, 4u);
  EXPECT_EQ(vm.visibleColumns, 7u);
  const auto svg = renderSvg(vm);
  EXPECT_EQ(count(svg, "class=\"placeholder\""), 1u);
  EXPECT_NE(svg.find(">4</text>"), std::string::npos);
}

TEST(ViewModel, ReorderKeepsCellValues) {
  const auto m = sample(3, 5);
  auto s = orderRows(identityView(3, 5), RowStatistic::Max, m);
  s = orderColumns(s, {ColumnOrder::NetworkMetric, {5, 4, 3, 2, 1}}, std::vector<int>{0, 1, 2, 3, 4});
  const auto vm = buildViewModel(m, s, divergingScale());
  for (const auto& c : vm.cells) EXPECT_EQ(c.value, m.at(c.row, c.col));
  EXPECT_EQ(vm.cells.front().col, 4u);
}

TEST(ViewModel, RejectsMismatchedPermutation) {
  EXPECT_THROW(buildViewModel(sample(2, 3), identityView(2, 4), divergingScale()), InvalidArgument);
}

TEST(Svg, ByteIdenticalAcrossRuns) {
  const auto m = sample(13, 20);
  const auto s = withClusters(13, {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, kNoise, 2, 2, 2, 2, 2, 2, 2});
  const std::string a = renderSvg(buildViewModel(m, s, divergingScale()));
  const std::string b = renderSvg(buildViewModel(m, s, divergingScale()));
  EXPECT_EQ(a, b);
  EXPECT_EQ(count(a, "class=\"cell\""), 13u * 20u);
  EXPECT_NE(a.find("stop-color=\"#67001F\""), std::string::npos);
  EXPECT_NE(a.find("stop-color=\"#F7F7F7\""), std::string::npos);
  EXPECT_NE(a.find("stop-color=\"#053061\""), std::string::npos);
}

TEST(Svg, EscapesLabels) {
  auto m = sample(1, 1);
  m.rowLabels[0] = "a<b&c";
  const auto svg = renderSvg(buildViewModel(m, identityView(1, 1), divergingScale()));
  EXPECT_EQ(svg.find("a<b"), std::string::npos);
  EXPECT_NE(svg.find("a&lt;b&amp;c"), std::string::npos);
}

TEST(Export, WritesSvgAndPng) {
  const auto dir = std::filesystem::temp_directory_path() / "netcensus_render_test";
  std::filesystem::create_directories(dir);
  const auto vm = buildViewModel(sample(4, 4), identityView(4, 4), grayscaleScale(-1, 1), {3});
  exportSvg(vm, (dir / "a.svg").string());
  exportPng(vm, (dir / "a.png").string());
  std::ifstream png(dir / "a.png", std::ios::binary);
  char sig[8] = {};
  png.read(sig, 8);
  EXPECT_EQ(std::string(sig + 1, 3), "PNG");
  EXPECT_GT(std::filesystem::file_size(dir / "a.svg"), 100u);
  std::filesystem::remove_all(dir);
}

TEST(Svg, EmptyMatrixRefused) {
  DenseMatrix m;
  EXPECT_THROW(renderSvg(buildViewModel(m, identityView(0, 0), divergingScale())), InvalidArgument);
}
