#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bit/ecosystem.hpp"

namespace oracle {

using bit::GrayImage;
using bit::Level;
using bit::RgbImage;

inline GrayImage random_gray(std::mt19937_64& rng, std::size_t w, std::size_t h, int levels) {
  // Pick `levels` distinct gray values, then fill pixels from that palette.
  std::vector<int> palette(256);
  for (int i = 0; i < 256; ++i) palette[i] = i;
  for (int i = 255; i > 0; --i) std::swap(palette[i], palette[rng() % (i + 1)]);
  palette.resize(static_cast<std::size_t>(levels));
  std::vector<Level> px(w * h);
  for (auto& v : px) v = static_cast<Level>(palette[rng() % palette.size()]);
  return GrayImage(w, h, std::move(px));
}

inline RgbImage random_rgb(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::vector<bit::Rgb> px(w * h);
  for (auto& p : px) p = {static_cast<Level>(rng()), static_cast<Level>(rng()), static_cast<Level>(rng())};
  return RgbImage(w, h, std::move(px));
}

inline RgbImage gray_to_rgb(const GrayImage& g) {
  std::vector<bit::Rgb> px(g.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = {g.pixels()[i], g.pixels()[i], g.pixels()[i]};
  return RgbImage(g.width(), g.height(), std::move(px));
}

// ---------------------------------------------------------------- tree paths

/// Leaf paths from a pixel-list recursion: each gray level maps to its
/// root-to-leaf string of 'L'/'R'. The split uses the floating mean of the
/// pixel list, so it exercises a different route than the integer
/// comparison in the library.
inline void split_pixels(const std::vector<int>& pixels, const std::string& path, std::map<int, std::string>& out) {
  std::vector<int> distinct = pixels;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() == 1) {
    out[distinct.front()] = path;
    return;
  }
  long double mean = 0.0L;
  for (int p : pixels) mean += p;
  mean /= static_cast<long double>(pixels.size());
  std::vector<int> left, right;
  for (int p : pixels) (static_cast<long double>(p) < mean ? left : right).push_back(p);
  split_pixels(left, path + "L", out);
  split_pixels(right, path + "R", out);
}

inline std::map<int, std::string> leaf_paths(const GrayImage& image) {
  std::vector<int> pixels(image.pixels().begin(), image.pixels().end());
  std::map<int, std::string> out;
  split_pixels(pixels, "", out);
  return out;
}

inline int path_distance(const std::string& a, const std::string& b) {
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
  return static_cast<int>(a.size() + b.size() - 2 * common);
}

// ---------------------------------------------------------------- taxonomic indices by brute force

struct BruteTaxonomy {
  double delta = 0.0;
  double delta_star = 0.0;
  double s_pd = 0.0;
};

/// Δ and Δ* from explicit loops over every unordered pixel pair, distances
/// from leaf paths.
inline BruteTaxonomy brute_taxonomy(const GrayImage& image) {
  const auto paths = leaf_paths(image);
  const auto px = image.pixels();
  const std::size_t n = px.size();
  long double all_pairs_sum = 0.0L, cross_sum = 0.0L, cross_pairs = 0.0L;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const int d = px[p] == px[q] ? 0 : path_distance(paths.at(px[p]), paths.at(px[q]));
      all_pairs_sum += d;
      if (px[p] != px[q]) {
        cross_sum += d;
        cross_pairs += 1.0L;
      }
    }
  }
  BruteTaxonomy out;
  out.delta = static_cast<double>(all_pairs_sum / (static_cast<long double>(n) * (n - 1) / 2.0L));
  if (cross_pairs > 0.0L) out.delta_star = static_cast<double>(cross_sum / cross_pairs);

  // sPD from explicit species-pair loops.
  std::map<int, long double> counts;
  for (auto v : px) counts[v] += 1.0L;
  long double weighted = 0.0L, weights = 0.0L;
  for (auto i = counts.begin(); i != counts.end(); ++i)
    for (auto j = std::next(i); j != counts.end(); ++j) {
      weighted += path_distance(paths.at(i->first), paths.at(j->first)) * i->second * j->second;
      weights += i->second * j->second;
    }
  const auto s = static_cast<long double>(counts.size());
  if (weights > 0.0L) out.s_pd = static_cast<double>(s * (s - 1.0L) / 2.0L * weighted / weights);
  return out;
}

// ---------------------------------------------------------------- Fisher alpha

/// Plain arithmetic bisection in long double on a wide bracket.
inline double fisher_alpha_bisect(double s, double n) {
  auto f = [&](long double a) { return a * std::log(1.0L + static_cast<long double>(n) / a) - s; };
  long double lo = 1e-9L, hi = 1e12L;
  for (int i = 0; i < 400; ++i) {
    const long double mid = (lo + hi) / 2.0L;
    (f(mid) < 0.0L ? lo : hi) = mid;
  }
  return static_cast<double>((lo + hi) / 2.0L);
}

// ---------------------------------------------------------------- filters

/// Unsharp mask by direct 2-D convolution with an exact (unquantized)
/// Gaussian of sigma = radius truncated at round(4 sigma), replicated borders.
inline std::vector<double> unsharp_real(const GrayImage& image, double radius, double amount) {
  const int half = static_cast<int>(std::floor(4.0 * radius + 0.5));
  std::vector<double> k(static_cast<std::size_t>(2 * half + 1));
  double total = 0.0;
  for (int i = -half; i <= half; ++i) total += k[static_cast<std::size_t>(i + half)] = std::exp(-i * i / (2 * radius * radius));
  for (auto& v : k) v /= total;
  const int w = static_cast<int>(image.width()), h = static_cast<int>(image.height());
  auto at = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return static_cast<double>(image.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)));
  };
  std::vector<double> out(image.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double blur = 0.0;
      for (int dy = -half; dy <= half; ++dy)
        for (int dx = -half; dx <= half; ++dx)
          blur += k[static_cast<std::size_t>(dy + half)] * k[static_cast<std::size_t>(dx + half)] * at(x + dx, y + dy);
      out[static_cast<std::size_t>(y * w + x)] = at(x, y) + amount * (at(x, y) - blur);
    }
  return out;
}

/// Crimmins speckle removal written out step by step: the dark-pixel
/// adjustment over all four directions, then the light-pixel adjustment.
inline GrayImage crimmins_literal(const GrayImage& image, int iterations) {
  const int w = static_cast<int>(image.width()), h = static_cast<int>(image.height());
  std::vector<int> img(image.pixels().begin(), image.pixels().end());
  auto get = [&](const std::vector<int>& src, int x, int y) {
    return src[static_cast<std::size_t>(std::clamp(y, 0, h - 1) * w + std::clamp(x, 0, w - 1))];
  };
  // Direction vectors in the same order as the library: E-W, N-S, and the two diagonals.
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};

  auto pass = [&](int dx, int dy, int rule) {
    const std::vector<int> src = img;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int a = get(src, x - dx, y - dy), b = get(src, x, y), c = get(src, x + dx, y + dy);
        int& out = img[static_cast<std::size_t>(y * w + x)];
        switch (rule) {
          case 0: if (a >= b + 2) out = b + 1; break;
          case 1: if (a > b && b <= c) out = b + 1; break;
          case 2: if (c > b && b <= a) out = b + 1; break;
          case 3: if (c >= b + 2) out = b + 1; break;
          case 4: if (a <= b - 2) out = b - 1; break;
          case 5: if (a < b && b >= c) out = b - 1; break;
          case 6: if (c < b && b >= a) out = b - 1; break;
          case 7: if (c <= b - 2) out = b - 1; break;
        }
      }
  };

  for (int it = 0; it < iterations; ++it) {
    for (auto& d : dirs)
      for (int rule = 0; rule < 4; ++rule) pass(d[0], d[1], rule);
    for (auto& d : dirs)
      for (int rule = 4; rule < 8; ++rule) pass(d[0], d[1], rule);
  }
  std::vector<Level> px(img.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = static_cast<Level>(img[i]);
  return GrayImage(image.width(), image.height(), std::move(px));
}

} // namespace oracle
