#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netcensus/cluster_reorder.hpp"

namespace netcensus {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
  std::string hex() const;  // "#RRGGBB"
};

Rgb parseHex(const std::string& hex);

enum class ScaleKind { Diverging, Grayscale };

// Piecewise-linear RGB ramp. Anchor positions are fractions of the domain.
struct ColorScale {
  ScaleKind kind = ScaleKind::Diverging;
  double lo = -1.0;
  double hi = 1.0;
  std::vector<std::pair<double, Rgb>> anchors;
};

// ColorBrewer RdBu endpoints (11-class) and its neutral midpoint.
inline constexpr Rgb kDivergingLow{0x67, 0x00, 0x1F};   // -1, anti-motif
inline constexpr Rgb kDivergingMid{0xF7, 0xF7, 0xF7};   //  0
inline constexpr Rgb kDivergingHigh{0x05, 0x30, 0x61};  // +1, motif
inline constexpr Rgb kWhite{0xFF, 0xFF, 0xFF};
inline constexpr Rgb kBlack{0x00, 0x00, 0x00};

ColorScale divergingScale(double lo = -1.0, double hi = 1.0);
ColorScale grayscaleScale(double lo = 0.0, double hi = 1.0);

// Clamps into the domain, interpolates per channel and rounds half up.
Rgb colorOf(const ColorScale& scale, double value);

enum class Normalization { None, PerRow, Global };

struct RenderOptions {
  int cellSize = 12;
  // None maps raw values through the scale; PerRow / Global divide by the row
  // (or matrix) maximum first, so the scale domain should be [0, 1].
  Normalization normalization = Normalization::None;
  std::string title;
};

struct Cell {
  std::size_t row = 0;  // source indices
  std::size_t col = 0;
  int x = 0, y = 0, size = 0;
  double value = 0.0;
  Rgb color;
  std::string label;  // "<row label>, <column label>"
};

struct Placeholder {
  int clusterId = 0;
  std::size_t hiddenCount = 0;
  int x = 0, y = 0, width = 0, height = 0;
};

struct AxisLabel {
  std::string text;
  int position = 0;  // centre of the row / column in pixels
};

struct PixelViewModel {
  int cellSize = 0;
  int originX = 0, originY = 0;
  int gridWidth = 0, gridHeight = 0;
  int width = 0, height = 0;
  std::size_t visibleColumns = 0;  // data columns plus placeholder columns
  std::size_t gapCount = 0;
  std::vector<Cell> cells;
  std::vector<Placeholder> placeholders;
  std::vector<AxisLabel> rowLabels;
  std::vector<AxisLabel> colLabels;
  ColorScale scale;
  std::string title;
};

inline constexpr int kClusterGapCells = 2;

// Columns left to right in colPermutation order, rows top to bottom in
// rowPermutation order. With a cluster assignment present, every change of
// cluster label along the column order opens a two-cell gap, and runs of a
// collapsed cluster longer than six show 3 + placeholder + 3 columns.
PixelViewModel buildViewModel(const DenseMatrix& matrix, const ViewState& state,
                              const ColorScale& scale, const RenderOptions& options = {});

std::string renderSvg(const PixelViewModel& vm);
void exportSvg(const PixelViewModel& vm, const std::string& path);
void exportPng(const PixelViewModel& vm, const std::string& path, int scale = 1);

}  // namespace netcensus
