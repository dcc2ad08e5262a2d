#pragma once

// k-nearest-neighbour classifier over normalized feature rows.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "bit/error.hpp"
#include "bit/harness/feature_table.hpp"

namespace bit {

struct KnnModel {
  FeatureTable train;
  std::size_t k = 1;
};

inline KnnModel knn_train(FeatureTable train, std::size_t k) {
  if (k == 0) throw InvalidInput("knn_train: k must be positive");
  if (k > train.size())
    throw InvalidInput("knn_train: k=" + std::to_string(k) + " exceeds " + std::to_string(train.size()) +
                       " training rows");
  return {std::move(train), k};
}

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

/// Majority vote among the k nearest rows by Euclidean distance. Equal
/// distances rank by sample id; a tied vote goes to the tied class whose
/// member ranks nearest.
inline std::string knn_predict(const KnnModel& model, const std::vector<double>& features) {
  if (features.size() != model.train.dimension())
    throw InvalidInput("knn_predict: query has " + std::to_string(features.size()) + " features, model has " +
                       std::to_string(model.train.dimension()));

  const auto& rows = model.train.rows();
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) ranked.emplace_back(squared_distance(features, rows[i].features), i);
  auto nearer = [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return rows[a.second].sample_id < rows[b.second].sample_id;
  };
  const auto k = model.k;
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(), nearer);

  std::map<std::string, std::size_t> votes;
  std::size_t best = 0;
  for (std::size_t i = 0; i < k; ++i) best = std::max(best, ++votes[rows[ranked[i].second].label]);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& label = rows[ranked[i].second].label;
    if (votes[label] == best) return label;
  }
  return rows[ranked.front().second].label;
}

inline std::vector<std::string> knn_predict(const KnnModel& model, const FeatureTable& queries) {
  std::vector<std::string> out;
  out.reserve(queries.size());
  for (const auto& row : queries.rows()) out.push_back(knn_predict(model, row.features));
  return out;
}

} // namespace bit
