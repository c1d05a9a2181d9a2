#include "netcensus/pixel_render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "netcensus/common.hpp"

namespace netcensus {
namespace {

constexpr int kLabelMargin = 64;
constexpr int kTitleMargin = 24;
constexpr int kBottomMargin = 72;
constexpr int kRightMargin = 16;
constexpr Rgb kPlaceholderGray{0xBD, 0xBD, 0xBD};

std::string escapeXml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string formatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", r, g, b);
  return buf;
}

Rgb parseHex(const std::string& hex) {
  unsigned r, g, b;
  if (hex.size() != 7 || hex[0] != '#' || std::sscanf(hex.c_str() + 1, "%2x%2x%2x", &r, &g, &b) != 3)
    throw InvalidArgument("bad colour: " + hex);
  return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
}

ColorScale divergingScale(double lo, double hi) {
  return {ScaleKind::Diverging, lo, hi, {{0.0, kDivergingLow}, {0.5, kDivergingMid}, {1.0, kDivergingHigh}}};
}

ColorScale grayscaleScale(double lo, double hi) {
  return {ScaleKind::Grayscale, lo, hi, {{0.0, kWhite}, {1.0, kBlack}}};
}

Rgb colorOf(const ColorScale& scale, double value) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot colour a non-finite value");
  if (scale.anchors.empty()) throw InvalidArgument("colour scale has no anchors");
  const double span = scale.hi - scale.lo;
  const double t = span > 0.0 ? std::clamp((value - scale.lo) / span, 0.0, 1.0) : 0.0;
  const auto& anchors = scale.anchors;
  if (t <= anchors.front().first) return anchors.front().second;
  if (t >= anchors.back().first) return anchors.back().second;
  std::size_t k = 1;
  while (k < anchors.size() && anchors[k].first < t) ++k;
  const auto& [p0, c0] = anchors[k - 1];
  const auto& [p1, c1] = anchors[k];
  if (t == p1) return c1;
  const double u = (t - p0) / (p1 - p0);
  const auto channel = [u](std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(std::floor(a + (double(b) - double(a)) * u + 0.5));
  };
  return {channel(c0.r, c1.r), channel(c0.g, c1.g), channel(c0.b, c1.b)};
}

PixelViewModel buildViewModel(const DenseMatrix& matrix, const ViewState& state,
                              const ColorScale& scale, const RenderOptions& options) {
  if (options.cellSize < 1) throw InvalidArgument("cell size must be positive");
  if (!isPermutation(state.rowPermutation, matrix.rows) ||
      !isPermutation(state.colPermutation, matrix.cols))
    throw InvalidArgument("view permutations do not match the matrix dimensions");
  if (state.clusters && state.clusters->labels.size() != matrix.cols)
    throw InvalidArgument("cluster labels do not match the column count");

  PixelViewModel vm;
  vm.cellSize = options.cellSize;
  vm.scale = scale;
  vm.title = options.title;
  vm.originX = kLabelMargin;
  vm.originY = kTitleMargin;
  const int cs = options.cellSize;

  // normalisation divisors per row
  std::vector<double> divisor(matrix.rows, 1.0);
  if (options.normalization != Normalization::None) {
    double globalMax = 0.0;
    for (std::size_t r = 0; r < matrix.rows; ++r) {
      double rowMax = 0.0;
      for (std::size_t c = 0; c < matrix.cols; ++c) rowMax = std::max(rowMax, matrix.at(r, c));
      divisor[r] = rowMax;
      globalMax = std::max(globalMax, rowMax);
    }
    if (options.normalization == Normalization::Global) std::fill(divisor.begin(), divisor.end(), globalMax);
    for (double& d : divisor)
      if (d <= 0.0) d = 1.0;
  }

  // Column slots: a source column, a placeholder, or a gap.
  struct Slot {
    enum Kind { Column, Hidden } kind;
    std::size_t col = 0;
    std::size_t hidden = 0;
    int cluster = 0;
  };
  std::vector<Slot> slots;
  std::vector<std::size_t> gapsBefore;  // slot index where a gap opens
  const auto& perm = state.colPermutation;
  std::size_t i = 0;
  while (i < perm.size()) {
    std::size_t j = i + 1;
    const int label = state.clusters ? state.clusters->labels[perm[i]] : kNoise;
    if (state.clusters)
      while (j < perm.size() && state.clusters->labels[perm[j]] == label) ++j;
    else
      j = perm.size();
    if (i > 0) gapsBefore.push_back(slots.size());
    const std::size_t run = j - i;
    const bool collapsed = label != kNoise && state.collapsed.contains(label) &&
                           run > kCollapsedHead + kCollapsedTail;
    if (collapsed) {
      for (std::size_t k = 0; k < kCollapsedHead; ++k) slots.push_back({Slot::Column, perm[i + k], 0, label});
      slots.push_back({Slot::Hidden, 0, run - kCollapsedHead - kCollapsedTail, label});
      for (std::size_t k = j - kCollapsedTail; k < j; ++k) slots.push_back({Slot::Column, perm[k], 0, label});
    } else {
      for (std::size_t k = i; k < j; ++k) slots.push_back({Slot::Column, perm[k], 0, label});
    }
    i = j;
  }

  vm.visibleColumns = slots.size();
  vm.gapCount = gapsBefore.size();
  vm.gridWidth = static_cast<int>(vm.visibleColumns) * cs +
                 static_cast<int>(vm.gapCount) * kClusterGapCells * cs;
  vm.gridHeight = static_cast<int>(matrix.rows) * cs;
  vm.width = vm.originX + vm.gridWidth + kRightMargin;
  vm.height = vm.originY + vm.gridHeight + kBottomMargin;

  for (std::size_t k = 0; k < matrix.rows; ++k) {
    const std::size_t r = state.rowPermutation[k];
    vm.rowLabels.push_back({r < matrix.rowLabels.size() ? matrix.rowLabels[r] : std::to_string(r),
                            vm.originY + static_cast<int>(k) * cs + cs / 2});
  }

  int x = vm.originX;
  std::size_t gapIdx = 0;
  vm.cells.reserve(matrix.cols * matrix.rows);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (gapIdx < gapsBefore.size() && gapsBefore[gapIdx] == s) {
      x += kClusterGapCells * cs;
      ++gapIdx;
    }
    const Slot& slot = slots[s];
    if (slot.kind == Slot::Hidden) {
      vm.placeholders.push_back({slot.cluster, slot.hidden, x, vm.originY, cs, vm.gridHeight});
    } else {
      const std::size_t c = slot.col;
      vm.colLabels.push_back({c < matrix.colLabels.size() ? matrix.colLabels[c] : std::to_string(c), x + cs / 2});
      for (std::size_t k = 0; k < matrix.rows; ++k) {
        const std::size_t r = state.rowPermutation[k];
        const double raw = matrix.at(r, c);
        const double value = options.normalization == Normalization::None ? raw : raw / divisor[r];
        const std::string rowLabel = r < matrix.rowLabels.size() ? matrix.rowLabels[r] : std::to_string(r);
        vm.cells.push_back({r, c, x, vm.originY + static_cast<int>(k) * cs, cs, raw, colorOf(scale, value),
                            rowLabel + ", " + vm.colLabels.back().text});
      }
    }
    x += cs;
  }
  return vm;
}

std::string renderSvg(const PixelViewModel& vm) {
  if (vm.cells.empty()) throw InvalidArgument("nothing to render");
  std::ostringstream out;
  const int cs = vm.cellSize;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << vm.width
      << "\" height=\"" << vm.height << "\" viewBox=\"0 0 " << vm.width << ' ' << vm.height << "\">\n";
  out << "<defs>\n";
  out << "<pattern id=\"hatch\" width=\"4\" height=\"4\" patternUnits=\"userSpaceOnUse\">"
         "<rect width=\"4\" height=\"4\" fill=\""
      << kPlaceholderGray.hex()
      << "\"/><path d=\"M0,4 L4,0\" stroke=\"#636363\" stroke-width=\"1\"/></pattern>\n";
  out << "<linearGradient id=\"legend-gradient\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">\n";
  for (const auto& [p, c] : vm.scale.anchors)
    out << "<stop offset=\"" << formatNumber(p) << "\" stop-color=\"" << c.hex() << "\"/>\n";
  out << "</linearGradient>\n</defs>\n";
  out << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << vm.width << "\" height=\""
      << vm.height << "\" fill=\"#FFFFFF\"/>\n";
  if (!vm.title.empty())
    out << "<text class=\"title\" x=\"" << vm.originX << "\" y=\"16\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << escapeXml(vm.title) << "</text>\n";

  out << "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (const auto& c : vm.cells)
    out << "<rect class=\"cell\" x=\"" << c.x << "\" y=\"" << c.y << "\" width=\"" << c.size
        << "\" height=\"" << c.size << "\" fill=\"" << c.color.hex() << "\"><title>"
        << escapeXml(c.label) << " = "
        << formatNumber(c.value) << "</title></rect>\n";
  out << "</g>\n";

  if (!vm.placeholders.empty()) {
    out << "<g class=\"placeholders\">\n";
    for (const auto& p : vm.placeholders) {
      out << "<rect class=\"placeholder\" data-cluster=\"" << p.clusterId << "\" x=\"" << p.x
          << "\" y=\"" << p.y << "\" width=\"" << p.width << "\" height=\"" << p.height
          << "\" fill=\"url(#hatch)\"/>\n";
      out << "<text class=\"placeholder-label\" x=\"" << p.x + p.width / 2 << "\" y=\""
          << p.y + p.height + 10 << "\" font-family=\"sans-serif\" font-size=\"9\" "
          << "text-anchor=\"middle\">" << p.hiddenCount << "</text>\n";
    }
    out << "</g>\n";
  }

  out << "<g class=\"row-labels\" font-family=\"sans-serif\" font-size=\"" << std::max(6, std::min(cs, 11))
      << "\" text-anchor=\"end\">\n";
  for (const auto& l : vm.rowLabels)
    out << "<text class=\"row-label\" x=\"" << vm.originX - 4 << "\" y=\"" << l.position << "\" dominant-baseline=\"middle\">"
        << escapeXml(l.text) << "</text>\n";
  out << "</g>\n";

  // thin out column labels on wide matrices
  const std::size_t stride = std::max<std::size_t>(1, (vm.colLabels.size() + 39) / 40);
  out << "<g class=\"col-labels\" font-family=\"sans-serif\" font-size=\"8\">\n";
  const int labelY = vm.originY + vm.gridHeight + 14;
  for (std::size_t k = 0; k < vm.colLabels.size(); k += stride) {
    const auto& l = vm.colLabels[k];
    out << "<text class=\"col-label\" x=\"" << l.position << "\" y=\"" << labelY << "\" transform=\"rotate(45 "
        << l.position << ' ' << labelY << ")\">" << escapeXml(l.text) << "</text>\n";
  }
  out << "</g>\n";

  const int legendY = vm.height - 24;
  const int legendW = std::min(160, std::max(60, vm.gridWidth));
  out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"9\">\n";
  out << "<rect class=\"legend-bar\" x=\"" << vm.originX << "\" y=\"" << legendY << "\" width=\""
      << legendW << "\" height=\"8\" fill=\"url(#legend-gradient)\" stroke=\"#636363\" stroke-width=\"0.5\"/>\n";
  for (const auto& [p, c] : vm.scale.anchors) {
    const double v = vm.scale.lo + p * (vm.scale.hi - vm.scale.lo);
    out << "<text x=\"" << vm.originX + static_cast<int>(std::lround(p * legendW)) << "\" y=\""
        << legendY + 18 << "\" text-anchor=\"middle\" data-color=\"" << c.hex() << "\">"
        << formatNumber(v) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

void exportSvg(const PixelViewModel& vm, const std::string& path) {
  const std::string svg = renderSvg(vm);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << svg;
  if (!out) throw IoError("write failed: " + path);
}

void exportPng(const PixelViewModel& vm, const std::string& path, int scale) {
  if (vm.cells.empty()) throw InvalidArgument("nothing to render");
  if (scale < 1) throw InvalidArgument("PNG scale must be positive");
  const int w = vm.width * scale, h = vm.height * scale;
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h * 3, 0xFF);
  const auto fill = [&](int x0, int y0, int cw, int ch, Rgb c) {
    for (int y = y0 * scale; y < std::min(h, (y0 + ch) * scale); ++y)
      for (int x = x0 * scale; x < std::min(w, (x0 + cw) * scale); ++x) {
        auto* p = &pixels[(static_cast<std::size_t>(y) * w + x) * 3];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
      }
  };
  for (const auto& c : vm.cells) fill(c.x, c.y, c.size, c.size, c.color);
  for (const auto& p : vm.placeholders) fill(p.x, p.y, p.width, p.height, kPlaceholderGray);

  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!file) throw IoError("cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encoding failed: " + path);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < h; ++y) png_write_row(png, &pixels[static_cast<std::size_t>(y) * w * 3]);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace netcensus
