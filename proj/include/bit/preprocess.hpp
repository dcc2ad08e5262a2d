#pragma once

// Channel splitting, luminance conversion, unsharp masking and Crimmins
// speckle removal.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "bit/ecosystem.hpp"

namespace bit {

inline std::tuple<GrayImage, GrayImage, GrayImage> split_channels(const RgbImage& image) {
  const auto w = image.width(), h = image.height();
  std::vector<Level> r(image.size()), g(image.size()), b(image.size());
  auto px = image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    r[i] = px[i].r;
    g[i] = px[i].g;
    b[i] = px[i].b;
  }
  return {GrayImage(w, h, std::move(r)), GrayImage(w, h, std::move(g)), GrayImage(w, h, std::move(b))};
}

inline RgbImage merge_channels(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
  if (r.width() != g.width() || r.width() != b.width() || r.height() != g.height() ||
      r.height() != b.height())
    throw InvalidInput("merge_channels: channel sizes differ");
  std::vector<Rgb> px(r.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = {r.pixels()[i], g.pixels()[i], b.pixels()[i]};
  return RgbImage(r.width(), r.height(), std::move(px));
}

/// round(0.299 r + 0.587 g + 0.114 b), half up. Evaluated in integer
/// thousandths so the rounding is exact.
constexpr Level luminance(Rgb p) noexcept {
  const unsigned scaled = 299u * p.r + 587u * p.g + 114u * p.b;
  return static_cast<Level>((scaled + 500u) / 1000u);
}

inline GrayImage to_gray(const RgbImage& image) {
  std::vector<Level> out(image.size());
  std::ranges::transform(image.pixels(), out.begin(), luminance);
  return GrayImage(image.width(), image.height(), std::move(out));
}

namespace detail {

inline Level clamp_level(double v) {
  return static_cast<Level>(std::clamp(std::lround(v), 0L, 255L));
}

inline std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
  if (i < 0) return 0;
  if (static_cast<std::size_t>(i) >= n) return n - 1;
  return static_cast<std::size_t>(i);
}

} // namespace detail

/// Symmetric Gaussian taps for sigma = radius, truncated at 4 sigma, in
/// 16-bit fixed point. Index 0 is the centre tap; taps[k] weights offsets +-k.
inline std::vector<std::int64_t> gaussian_taps(double radius) {
  const auto half = static_cast<std::size_t>(std::floor(4.0 * radius + 0.5));
  std::vector<std::int64_t> taps(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const double x = static_cast<double>(k);
    taps[k] = std::llround(65536.0 * std::exp(-x * x / (2.0 * radius * radius)));
  }
  return taps;
}

inline constexpr double kMaxUnsharpRadius = 100.0;

/// Unsharp mask: in + amount * (in - blur(in)), with a separable Gaussian
/// blur and replicated borders. The blur is accumulated in exact integer
/// arithmetic, so the result does not depend on traversal order and commutes
/// exactly with every rotation and reflection of the raster.
inline GrayImage unsharp(const GrayImage& image, double radius = 1.0, double amount = 1.0) {
  if (!(radius > 0.0) || radius > kMaxUnsharpRadius)
    throw InvalidInput("unsharp: radius must be in (0, 100]");
  if (!(amount > 0.0) || !std::isfinite(amount)) throw InvalidInput("unsharp: amount must be > 0");
  if (image.empty()) return image;

  const auto taps = gaussian_taps(radius);
  const auto half = static_cast<std::ptrdiff_t>(taps.size() - 1);
  std::int64_t weight = taps[0];
  for (std::size_t k = 1; k < taps.size(); ++k) weight += 2 * taps[k];

  const auto w = image.width(), h = image.height();
  std::vector<std::int64_t> rows(image.size());
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto sx = static_cast<std::ptrdiff_t>(x);
      std::int64_t acc = taps[0] * image.at(x, y);
      for (std::ptrdiff_t k = 1; k <= half; ++k)
        acc += taps[k] * (image.at(detail::clamp_index(sx - k, w), y) +
                          image.at(detail::clamp_index(sx + k, w), y));
      rows[y * w + x] = acc;
    }
  }

  const double norm = static_cast<double>(weight) * static_cast<double>(weight);
  std::vector<Level> out(image.size());
  for (std::size_t y = 0; y < h; ++y) {
    const auto sy = static_cast<std::ptrdiff_t>(y);
    for (std::size_t x = 0; x < w; ++x) {
      std::int64_t acc = taps[0] * rows[y * w + x];
      for (std::ptrdiff_t k = 1; k <= half; ++k)
        acc += taps[k] * (rows[detail::clamp_index(sy - k, h) * w + x] +
                          rows[detail::clamp_index(sy + k, h) * w + x]);
      const double in = image.at(x, y);
      const double blur = static_cast<double>(acc) / norm;
      out[y * w + x] = detail::clamp_level(in + amount * (in - blur));
    }
  }
  return GrayImage(w, h, std::move(out));
}

namespace detail {

struct Direction {
  int dx;
  int dy;
};

// Horizontal, vertical, and the two diagonals. `a` is the neighbour at
// -(dx,dy), `c` the neighbour at +(dx,dy).
inline constexpr std::array<Direction, 4> kCrimminsDirections{{{1, 0}, {0, 1}, {1, 1}, {1, -1}}};

// One whole-image sub-step; every pixel reads the previous sub-step's raster.
template <typename Rule>
void crimmins_substep(std::vector<Level>& px, std::vector<Level>& scratch, std::size_t w,
                      std::size_t h, Direction d, Rule rule) {
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto sx = static_cast<std::ptrdiff_t>(x), sy = static_cast<std::ptrdiff_t>(y);
      const int a = px[clamp_index(sy - d.dy, h) * w + clamp_index(sx - d.dx, w)];
      const int b = px[y * w + x];
      const int c = px[clamp_index(sy + d.dy, h) * w + clamp_index(sx + d.dx, w)];
      scratch[y * w + x] = static_cast<Level>(b + rule(a, b, c));
    }
  }
  px.swap(scratch);
}

} // namespace detail

/// Crimmins complementary hulling, classic schedule. Each iteration runs a
/// dark-pixel pass (four sub-steps per direction that raise b) over all four
/// directions, then a light-pixel pass (four sub-steps per direction that
/// lower b). Borders replicate. The sub-step order is asymmetric in a and c,
/// so the filter does not commute with reflections or rotations.
inline GrayImage crimmins(const GrayImage& image, int iterations = 1) {
  if (iterations < 1) throw InvalidInput("crimmins: iterations must be >= 1");
  const auto w = image.width(), h = image.height();
  std::vector<Level> px(image.pixels().begin(), image.pixels().end());
  std::vector<Level> scratch(px.size());

  for (int it = 0; it < iterations; ++it) {
    for (const auto d : detail::kCrimminsDirections) {
      auto step = [&](auto rule) { detail::crimmins_substep(px, scratch, w, h, d, rule); };
      step([](int a, int b, int) { return a >= b + 2 ? 1 : 0; });
      step([](int a, int b, int c) { return a > b && b <= c ? 1 : 0; });
      step([](int a, int b, int c) { return c > b && b <= a ? 1 : 0; });
      step([](int, int b, int c) { return c >= b + 2 ? 1 : 0; });
    }
    for (const auto d : detail::kCrimminsDirections) {
      auto step = [&](auto rule) { detail::crimmins_substep(px, scratch, w, h, d, rule); };
      step([](int a, int b, int) { return a <= b - 2 ? -1 : 0; });
      step([](int a, int b, int c) { return a < b && b >= c ? -1 : 0; });
      step([](int a, int b, int c) { return c < b && b >= a ? -1 : 0; });
      step([](int, int b, int c) { return c <= b - 2 ? -1 : 0; });
    }
  }
  return GrayImage(w, h, std::move(px));
}

} // namespace bit
