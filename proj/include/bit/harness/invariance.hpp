#pragma once

// Invariance bench: compares the descriptor of an image with the descriptors
// of transformed copies, feature by feature.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "bit/descriptor.hpp"
#include "bit/harness/transform.hpp"

namespace bit {

/// Indices whose value depends on histogram proportions and tree shape only,
/// so block replication leaves them unchanged.
inline constexpr std::array<Index, 4> kScaleRobustIndices{Index::d_sw, Index::delta_star, Index::e_iq, Index::d_nn};

inline constexpr double kRescaleTolerance = 0.05;

enum class Check { exact, relative_tolerance, informational };

inline bool is_scale_robust(std::size_t feature) {
  const auto idx = static_cast<Index>(feature % kIndicesPerImage);
  return std::ranges::find(kScaleRobustIndices, idx) != kScaleRobustIndices.end();
}

/// What a transform promises for one feature. With enhancement enabled only
/// the R, G, B blocks stay exact under rotations and flips: the unsharp blur
/// commutes with them, the Crimmins schedule on the composite does not.
inline Check expected_check(const TransformSpec& t, std::size_t feature, const ExtractOptions& opts) {
  const bool gray_block = feature < kIndicesPerImage;
  switch (t.kind) {
    case TransformKind::rot90:
    case TransformKind::rot180:
    case TransformKind::rot270:
    case TransformKind::flip_h:
    case TransformKind::flip_v:
      return !opts.preprocess_enabled || !gray_block ? Check::exact : Check::informational;
    case TransformKind::shuffle:
      return opts.preprocess_enabled ? Check::informational : Check::exact;
    case TransformKind::replicate:
      return !opts.preprocess_enabled && is_scale_robust(feature) ? Check::exact : Check::informational;
    case TransformKind::rescale:
      return is_scale_robust(feature) ? Check::relative_tolerance : Check::informational;
    case TransformKind::gamma:
      return Check::informational;
  }
  return Check::informational;
}

/// |transformed - original| / |original|; 0 when both are 0, +inf when only
/// the original is 0.
inline double relative_difference(double original, double transformed) {
  const double diff = std::abs(transformed - original);
  if (diff == 0.0) return 0.0;
  if (original == 0.0) return std::numeric_limits<double>::infinity();
  return diff / std::abs(original);
}

struct TransformOutcome {
  TransformSpec transform;
  std::vector<double> abs_diff;
  std::vector<double> rel_diff;
  std::vector<Check> checks;
  double max_abs_diff = 0.0;
  std::vector<std::size_t> exact_failures;   // features expected bit-identical that differ
  std::vector<std::size_t> tolerance_breaches;

  bool ok() const noexcept { return exact_failures.empty() && tolerance_breaches.empty(); }
};

struct InvarianceReport {
  BiTVector original;
  std::vector<std::string> feature_names;
  std::vector<TransformOutcome> outcomes;

  bool has_exact_failure() const {
    return std::ranges::any_of(outcomes, [](const auto& o) { return !o.exact_failures.empty(); });
  }
};

inline TransformOutcome compare_descriptors(const BiTVector& original, const BiTVector& transformed,
                                            const TransformSpec& t, const ExtractOptions& opts) {
  TransformOutcome o{t, {}, {}, {}, 0.0, {}, {}};
  for (std::size_t f = 0; f < original.size(); ++f) {
    const double a = std::abs(transformed[f] - original[f]);
    const double r = relative_difference(original[f], transformed[f]);
    const auto check = expected_check(t, f, opts);
    o.abs_diff.push_back(a);
    o.rel_diff.push_back(r);
    o.checks.push_back(check);
    o.max_abs_diff = std::max(o.max_abs_diff, a);
    if (check == Check::exact && transformed[f] != original[f]) o.exact_failures.push_back(f);
    if (check == Check::relative_tolerance && !(r < kRescaleTolerance)) o.tolerance_breaches.push_back(f);
  }
  return o;
}

template <typename Pixel>
Image<Rgb> as_rgb(const Image<Pixel>& image) {
  if constexpr (std::is_same_v<Pixel, Rgb>) {
    return image;
  } else {
    std::vector<Rgb> px(image.size());
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = {image.pixels()[i], image.pixels()[i], image.pixels()[i]};
    return Image<Rgb>(image.width(), image.height(), std::move(px));
  }
}

inline InvarianceReport invariance_check(const RgbImage& image, const std::vector<TransformSpec>& transforms,
                                         const ExtractOptions& opts = {}) {
  InvarianceReport report;
  report.original = extract(image, opts);
  report.feature_names = report.original.names();
  for (const auto& t : transforms)
    report.outcomes.push_back(compare_descriptors(report.original, extract(apply_transform(image, t), opts), t, opts));
  return report;
}

} // namespace bit
