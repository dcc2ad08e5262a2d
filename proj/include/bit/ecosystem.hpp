#pragma once

// Image-as-ecosystem model: gray levels are species, pixels are individuals.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bit/error.hpp"

namespace bit {

using Level = std::uint8_t;
using Count = std::uint64_t;

inline constexpr std::size_t kLevels = 256;

struct Rgb {
  Level r = 0;
  Level g = 0;
  Level b = 0;
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major raster. An empty (0x0) image is representable so that the
/// operations that require pixels can reject it explicitly.
template <typename Pixel>
class Image {
public:
  using pixel_type = Pixel;

  Image() = default;

  Image(std::size_t width, std::size_t height, std::vector<Pixel> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != width_ * height_)
      throw InvalidInput("image: pixel count " + std::to_string(pixels_.size()) +
                         " != " + std::to_string(width_) + "x" + std::to_string(height_));
  }

  Image(std::size_t width, std::size_t height, Pixel fill = Pixel{})
      : Image(width, height, std::vector<Pixel>(width * height, fill)) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::span<const Pixel> pixels() const noexcept { return pixels_; }
  std::span<Pixel> pixels() noexcept { return pixels_; }

  const Pixel& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  Pixel& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  friend bool operator==(const Image&, const Image&) = default;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Pixel> pixels_;
};

using GrayImage = Image<Level>;
using RgbImage = Image<Rgb>;

struct Species {
  Level level = 0;
  Count count = 0;
  friend constexpr bool operator==(const Species&, const Species&) = default;
};

/// Sparse abundance table: one entry per gray level present, sorted by level.
class SpeciesHistogram {
public:
  explicit SpeciesHistogram(std::vector<Species> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InvalidInput("histogram: no species");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].count == 0) throw InvalidInput("histogram: zero count");
      if (i > 0 && entries_[i].level <= entries_[i - 1].level)
        throw InvalidInput("histogram: levels must be strictly increasing");
      total_ += entries_[i].count;
    }
  }

  /// Builds from a dense 256-bin table, dropping empty bins.
  static SpeciesHistogram from_dense(const std::array<Count, kLevels>& bins) {
    std::vector<Species> entries;
    for (std::size_t level = 0; level < kLevels; ++level)
      if (bins[level] > 0) entries.push_back({static_cast<Level>(level), bins[level]});
    return SpeciesHistogram(std::move(entries));
  }

  std::span<const Species> entries() const noexcept { return entries_; }
  std::size_t richness() const noexcept { return entries_.size(); }
  Count total() const noexcept { return total_; }

  Count max_count() const noexcept {
    Count m = 0;
    for (const auto& s : entries_) m = std::max(m, s.count);
    return m;
  }

  friend bool operator==(const SpeciesHistogram&, const SpeciesHistogram&) = default;

private:
  std::vector<Species> entries_;
  Count total_ = 0;
};

inline SpeciesHistogram build_histogram(const GrayImage& image) {
  if (image.empty()) throw InvalidInput("build_histogram: empty image");
  std::array<Count, kLevels> bins{};
  for (Level v : image.pixels()) ++bins[v];
  return SpeciesHistogram::from_dense(bins);
}

/// Species richness S.
inline std::size_t richness(const SpeciesHistogram& hist) noexcept { return hist.richness(); }

/// Expands a histogram back into a pixel multiset, ascending by level.
inline std::vector<Level> expand(const SpeciesHistogram& hist) {
  std::vector<Level> out;
  out.reserve(hist.total());
  for (const auto& s : hist.entries()) out.insert(out.end(), s.count, s.level);
  return out;
}

} // namespace bit
