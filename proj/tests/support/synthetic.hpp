#pragma once

// Generated texture classes for desk-scale classification checks. Classes
// differ in noise variance and in the period of a sinusoidal stripe
// pattern; each image gets a random base colour, phase and 90-degree
// rotation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bit/ecosystem.hpp"
#include "bit/harness/transform.hpp"

namespace synthetic {

struct TextureClass {
  std::string name;
  double period;     // pixels per stripe cycle
  double noise_sd;   // gray levels
};

inline const std::vector<TextureClass>& texture_classes() {
  static const std::vector<TextureClass> classes{
      {"fine_calm", 4.0, 3.0},
      {"fine_noisy", 4.0, 18.0},
      {"coarse_calm", 24.0, 3.0},
      {"coarse_noisy", 24.0, 18.0},
  };
  return classes;
}

inline bit::RgbImage make_texture(const TextureClass& cls, std::size_t size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> base(70.0, 180.0), phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> noise(0.0, cls.noise_sd);
  const double amplitude = 45.0;
  const double b0 = base(rng), b1 = base(rng), b2 = base(rng), ph = phase(rng);

  auto level = [](double v) { return static_cast<bit::Level>(std::clamp(std::lround(v), 0L, 255L)); };
  bit::RgbImage img(size, size);
  for (std::size_t y = 0; y < size; ++y)
    for (std::size_t x = 0; x < size; ++x) {
      const double stripe = amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(x) / cls.period + ph);
      img.at(x, y) = {level(b0 + stripe + noise(rng)), level(b1 + stripe + noise(rng)), level(b2 + stripe + noise(rng))};
    }

  static const bit::TransformSpec rotations[] = {bit::TransformSpec::rot90(), bit::TransformSpec::rot180(),
                                                 bit::TransformSpec::rot270()};
  const auto turn = rng() % 4;
  return turn == 0 ? img : bit::apply_transform(img, rotations[turn - 1]);
}

/// Smooth colour gradient: every channel changes by at most one level per
/// two pixels, so 2x nearest-neighbour decimation keeps every level.
inline bit::RgbImage make_gradient(std::size_t w, std::size_t h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> slope(0.05, 0.5), offset(0.0, 60.0);
  const double sx[3] = {slope(rng), slope(rng) * 0.5, slope(rng) * 0.25};
  const double sy[3] = {slope(rng) * 0.25, slope(rng), slope(rng) * 0.5};
  const double o[3] = {offset(rng), offset(rng), offset(rng)};
  auto level = [](double v) { return static_cast<bit::Level>(std::clamp(std::floor(v), 0.0, 255.0)); };
  bit::RgbImage img(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const double fx = static_cast<double>(x), fy = static_cast<double>(y);
      img.at(x, y) = {level(o[0] + sx[0] * fx + sy[0] * fy), level(o[1] + sx[1] * fx + sy[1] * fy),
                      level(o[2] + sx[2] * fx + sy[2] * fy)};
    }
  return img;
}

} // namespace synthetic
