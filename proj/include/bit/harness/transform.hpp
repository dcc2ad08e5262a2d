#pragma once

// Geometric and photometric image transforms used by the invariance bench.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bit/ecosystem.hpp"
#include "bit/error.hpp"
#include "bit/harness/split.hpp"

namespace bit {

enum class TransformKind { rot90, rot180, rot270, flip_h, flip_v, rescale, gamma, shuffle, replicate };

struct TransformSpec {
  TransformKind kind = TransformKind::rot90;
  double factor = 1.0;      // rescale factor in (0, 1], or gamma exponent > 0
  std::uint64_t seed = 0;   // shuffle
  std::size_t block = 2;    // replicate: each pixel becomes a block x block tile

  static TransformSpec rot90() { return {TransformKind::rot90}; }
  static TransformSpec rot180() { return {TransformKind::rot180}; }
  static TransformSpec rot270() { return {TransformKind::rot270}; }
  static TransformSpec flip_h() { return {TransformKind::flip_h}; }
  static TransformSpec flip_v() { return {TransformKind::flip_v}; }
  static TransformSpec rescale(double f) { return {TransformKind::rescale, f}; }
  static TransformSpec gamma(double g) { return {TransformKind::gamma, g}; }
  static TransformSpec shuffle(std::uint64_t seed) { return {TransformKind::shuffle, 1.0, seed}; }
  static TransformSpec replicate(std::size_t n) { return {TransformKind::replicate, 1.0, 0, n}; }

  bool is_dihedral() const noexcept {
    return kind == TransformKind::rot90 || kind == TransformKind::rot180 || kind == TransformKind::rot270 ||
           kind == TransformKind::flip_h || kind == TransformKind::flip_v;
  }

  std::string name() const {
    char buf[48];
    switch (kind) {
      case TransformKind::rot90: return "rot90";
      case TransformKind::rot180: return "rot180";
      case TransformKind::rot270: return "rot270";
      case TransformKind::flip_h: return "flip_h";
      case TransformKind::flip_v: return "flip_v";
      case TransformKind::rescale: std::snprintf(buf, sizeof buf, "rescale:%g", factor); return buf;
      case TransformKind::gamma: std::snprintf(buf, sizeof buf, "gamma:%g", factor); return buf;
      case TransformKind::shuffle: return "shuffle:" + std::to_string(seed);
      case TransformKind::replicate: return "replicate:" + std::to_string(block);
    }
    return "?";
  }
};

namespace detail {

inline double parse_real(const std::string& token, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput("transform '" + token + "': bad number");
  }
  if (used != text.size() || !std::isfinite(v)) throw InvalidInput("transform '" + token + "': bad number");
  return v;
}

inline std::uint64_t parse_unsigned(const std::string& token, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidInput("transform '" + token + "': expected a non-negative integer");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw InvalidInput("transform '" + token + "': integer out of range");
  }
}

} // namespace detail

/// Parses one token: rot90 | rot180 | rot270 | flip_h | flip_v |
/// rescale:<f> | gamma:<g> | shuffle:<seed> | replicate:<n>.
inline TransformSpec parse_transform(const std::string& token) {
  const auto colon = token.find(':');
  const std::string head = token.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string arg = has_arg ? token.substr(colon + 1) : "";

  if (!has_arg) {
    if (head == "rot90") return TransformSpec::rot90();
    if (head == "rot180") return TransformSpec::rot180();
    if (head == "rot270") return TransformSpec::rot270();
    if (head == "flip_h") return TransformSpec::flip_h();
    if (head == "flip_v") return TransformSpec::flip_v();
  } else if (head == "rescale") {
    const double f = detail::parse_real(token, arg);
    if (!(f > 0.0 && f <= 1.0)) throw InvalidInput("transform '" + token + "': factor must be in (0, 1]");
    return TransformSpec::rescale(f);
  } else if (head == "gamma") {
    const double g = detail::parse_real(token, arg);
    if (!(g > 0.0)) throw InvalidInput("transform '" + token + "': gamma must be positive");
    return TransformSpec::gamma(g);
  } else if (head == "shuffle") {
    return TransformSpec::shuffle(detail::parse_unsigned(token, arg));
  } else if (head == "replicate") {
    const auto n = detail::parse_unsigned(token, arg);
    if (n < 1 || n > 64) throw InvalidInput("transform '" + token + "': block must be in [1, 64]");
    return TransformSpec::replicate(static_cast<std::size_t>(n));
  }
  throw InvalidInput("unknown transform '" + token + "'");
}

inline std::vector<TransformSpec> parse_transforms(const std::string& list) {
  std::vector<TransformSpec> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto token = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!token.empty()) out.push_back(parse_transform(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw InvalidInput("no transforms given");
  return out;
}

namespace detail {

constexpr Level gamma_level(Level v, const std::array<Level, kLevels>& lut) { return lut[v]; }
constexpr Rgb gamma_level(Rgb p, const std::array<Level, kLevels>& lut) { return {lut[p.r], lut[p.g], lut[p.b]}; }

} // namespace detail

/// Rotations are clockwise. Rescale is nearest-neighbour to
/// (round(w f), round(h f)) reading source index min(round(i / f), n - 1).
/// Gamma maps each component v to round(255 (v / 255)^g).
template <typename Pixel>
Image<Pixel> apply_transform(const Image<Pixel>& in, const TransformSpec& t) {
  const auto w = in.width(), h = in.height();
  switch (t.kind) {
    case TransformKind::rot90: {
      Image<Pixel> out(h, w);
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) out.at(h - 1 - y, x) = in.at(x, y);
      return out;
    }
    case TransformKind::rot180: {
      Image<Pixel> out(w, h);
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) out.at(w - 1 - x, h - 1 - y) = in.at(x, y);
      return out;
    }
    case TransformKind::rot270: {
      Image<Pixel> out(h, w);
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) out.at(y, w - 1 - x) = in.at(x, y);
      return out;
    }
    case TransformKind::flip_h: {
      Image<Pixel> out(w, h);
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) out.at(w - 1 - x, y) = in.at(x, y);
      return out;
    }
    case TransformKind::flip_v: {
      Image<Pixel> out(w, h);
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) out.at(x, h - 1 - y) = in.at(x, y);
      return out;
    }
    case TransformKind::rescale: {
      const double f = t.factor;
      if (!(f > 0.0 && f <= 1.0)) throw InvalidInput("rescale: factor must be in (0, 1]");
      const auto nw = static_cast<std::size_t>(std::lround(static_cast<double>(w) * f));
      const auto nh = static_cast<std::size_t>(std::lround(static_cast<double>(h) * f));
      if (nw < 2 || nh < 2)
        throw InvalidInput("rescale: result " + std::to_string(nw) + "x" + std::to_string(nh) + " is below 2x2");
      auto source = [f](std::size_t i, std::size_t n) {
        return std::min(static_cast<std::size_t>(std::lround(static_cast<double>(i) / f)), n - 1);
      };
      Image<Pixel> out(nw, nh);
      for (std::size_t y = 0; y < nh; ++y)
        for (std::size_t x = 0; x < nw; ++x) out.at(x, y) = in.at(source(x, w), source(y, h));
      return out;
    }
    case TransformKind::gamma: {
      if (!(t.factor > 0.0)) throw InvalidInput("gamma: exponent must be positive");
      std::array<Level, kLevels> lut{};
      for (std::size_t v = 0; v < kLevels; ++v)
        lut[v] = static_cast<Level>(std::lround(255.0 * std::pow(static_cast<double>(v) / 255.0, t.factor)));
      Image<Pixel> out(w, h);
      for (std::size_t i = 0; i < in.size(); ++i) out.pixels()[i] = detail::gamma_level(in.pixels()[i], lut);
      return out;
    }
    case TransformKind::shuffle: {
      std::mt19937_64 rng(t.seed);
      const auto order = seeded_permutation(in.size(), rng);
      Image<Pixel> out(w, h);
      for (std::size_t i = 0; i < in.size(); ++i) out.pixels()[i] = in.pixels()[order[i]];
      return out;
    }
    case TransformKind::replicate: {
      const auto n = t.block;
      if (n < 1) throw InvalidInput("replicate: block must be >= 1");
      Image<Pixel> out(w * n, h * n);
      for (std::size_t y = 0; y < h * n; ++y)
        for (std::size_t x = 0; x < w * n; ++x) out.at(x, y) = in.at(x / n, y / n);
      return out;
    }
  }
  throw InvalidInput("apply_transform: unknown kind");
}

} // namespace bit
