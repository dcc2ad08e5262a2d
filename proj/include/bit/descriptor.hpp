#pragma once

// The 56-value BiT descriptor: 14 indices on each of the composite gray image
// and the R, G, B channel images.

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bit/biodiversity.hpp"
#include "bit/ecosystem.hpp"
#include "bit/preprocess.hpp"
#include "bit/taxonomy.hpp"

namespace bit {

inline constexpr std::size_t kIndicesPerImage = 14;
inline constexpr std::size_t kChannels = 4;
inline constexpr std::size_t kFeatureCount = kIndicesPerImage * kChannels;

inline constexpr std::array<std::string_view, kChannels> kChannelNames{"gray", "r", "g", "b"};
inline constexpr std::array<std::string_view, kIndicesPerImage> kIndexNames{
    "d_mg", "d_mn", "d_bp", "d_f",   "d_kt", "e_m",  "d_sw",
    "delta", "delta_star", "s_pd", "d_nn", "e_eq", "e_iq", "d_tt"};

/// Position of an index inside one 14-value channel block.
enum class Index : std::size_t {
  d_mg, d_mn, d_bp, d_f, d_kt, e_m, d_sw, delta, delta_star, s_pd, d_nn, e_eq, e_iq, d_tt
};

enum class Channel : std::size_t { gray, r, g, b };

constexpr std::size_t feature_index(Channel c, Index i) noexcept {
  return static_cast<std::size_t>(c) * kIndicesPerImage + static_cast<std::size_t>(i);
}

/// "<channel>_<index>" in canonical order: channel-major, biodiversity
/// indices before taxonomic ones.
inline std::vector<std::string> feature_names(bool gray_only = false) {
  std::vector<std::string> names;
  const std::size_t channels = gray_only ? 1 : kChannels;
  for (std::size_t c = 0; c < channels; ++c)
    for (auto index : kIndexNames) names.push_back(std::string(kChannelNames[c]) + "_" + std::string(index));
  return names;
}

struct ExtractOptions {
  bool preprocess_enabled = true;
  double unsharp_radius = 1.0;
  double unsharp_amount = 1.0;
  int crimmins_iterations = 1;
  bool gray_only = false;
};

struct BiTVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double at(Channel c, Index i) const { return values.at(feature_index(c, i)); }
  std::vector<std::string> names() const { return feature_names(values.size() == kIndicesPerImage); }

  friend bool operator==(const BiTVector&, const BiTVector&) = default;
};

/// All 14 indices for one gray image, in canonical block order.
inline std::array<double, kIndicesPerImage> image_indices(const GrayImage& image) {
  const auto hist = build_histogram(image);
  const auto bio = biodiversity_indices(hist);
  const auto tax = taxonomic_indices(hist);
  return {bio.d_mg,  bio.d_mn,       bio.d_bp, bio.d_f,  bio.d_kt, bio.e_m,  bio.d_sw,
          tax.delta, tax.delta_star, tax.s_pd, tax.d_nn, tax.e_eq, tax.e_iq, tax.d_tt};
}

/// The four gray images the descriptor is computed on, after the optional
/// enhancement step: unsharp on each channel, Crimmins on the composite.
inline std::array<GrayImage, kChannels> descriptor_images(const RgbImage& image, const ExtractOptions& opts) {
  auto [r, g, b] = split_channels(image);
  auto gray = to_gray(image);
  if (opts.preprocess_enabled) {
    r = unsharp(r, opts.unsharp_radius, opts.unsharp_amount);
    g = unsharp(g, opts.unsharp_radius, opts.unsharp_amount);
    b = unsharp(b, opts.unsharp_radius, opts.unsharp_amount);
    gray = crimmins(gray, opts.crimmins_iterations);
  }
  return {std::move(gray), std::move(r), std::move(g), std::move(b)};
}

inline BiTVector extract(const RgbImage& image, const ExtractOptions& opts = {}) {
  if (image.width() < 2 || image.height() < 2)
    throw InvalidInput("extract: image must be at least 2x2, got " + std::to_string(image.width()) + "x" +
                       std::to_string(image.height()));
  if (opts.preprocess_enabled) {
    if (!(opts.unsharp_radius > 0.0) || !(opts.unsharp_amount > 0.0))
      throw InvalidInput("extract: unsharp radius and amount must be positive");
    if (opts.crimmins_iterations < 1) throw InvalidInput("extract: crimmins iterations must be >= 1");
  }

  BiTVector out;
  if (opts.gray_only) {
    auto gray = to_gray(image);
    if (opts.preprocess_enabled) gray = crimmins(gray, opts.crimmins_iterations);
    const auto block = image_indices(gray);
    out.values.assign(block.begin(), block.end());
    return out;
  }

  out.values.reserve(kFeatureCount);
  for (const auto& channel : descriptor_images(image, opts)) {
    const auto block = image_indices(channel);
    out.values.insert(out.values.end(), block.begin(), block.end());
  }
  return out;
}

} // namespace bit
