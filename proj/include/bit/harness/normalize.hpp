#pragma once

// Min-max scaling fitted on training rows only.

#include <algorithm>
#include <vector>

#include "bit/error.hpp"
#include "bit/harness/feature_table.hpp"

namespace bit {

struct NormalizationParams {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t dimension() const noexcept { return min.size(); }
  friend bool operator==(const NormalizationParams&, const NormalizationParams&) = default;
};

inline NormalizationParams fit_minmax(const FeatureTable& train) {
  if (train.empty()) throw InvalidInput("fit_minmax: empty training table");
  NormalizationParams p{train[0].features, train[0].features};
  for (const auto& row : train.rows()) {
    for (std::size_t f = 0; f < row.features.size(); ++f) {
      p.min[f] = std::min(p.min[f], row.features[f]);
      p.max[f] = std::max(p.max[f], row.features[f]);
    }
  }
  return p;
}

/// (v - min) / (max - min), or 0 for a constant feature. Values outside the
/// fitted range are not clamped.
inline std::vector<double> apply_minmax(const std::vector<double>& features, const NormalizationParams& p) {
  if (features.size() != p.dimension())
    throw InvalidInput("apply_minmax: " + std::to_string(features.size()) + " features, params have " +
                       std::to_string(p.dimension()));
  std::vector<double> out(features.size());
  for (std::size_t f = 0; f < features.size(); ++f) {
    const double range = p.max[f] - p.min[f];
    out[f] = range > 0.0 ? (features[f] - p.min[f]) / range : 0.0;
  }
  return out;
}

inline FeatureTable apply_minmax(const FeatureTable& table, const NormalizationParams& p) {
  if (table.dimension() != p.dimension())
    throw InvalidInput("apply_minmax: table has " + std::to_string(table.dimension()) +
                       " features, params have " + std::to_string(p.dimension()));
  std::vector<std::vector<double>> scaled;
  scaled.reserve(table.size());
  for (const auto& row : table.rows()) scaled.push_back(apply_minmax(row.features, p));
  return table.with_features(std::move(scaled));
}

} // namespace bit
