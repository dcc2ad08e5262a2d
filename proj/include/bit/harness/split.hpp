#pragma once

// Stratified, seeded train/test partitioning.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bit/error.hpp"
#include "bit/harness/feature_table.hpp"

namespace bit {

/// Fisher-Yates over mt19937_64 draws. Written out instead of std::shuffle
/// so the permutation for a given seed is the same on every standard library.
inline std::vector<std::size_t> seeded_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
  return idx;
}

namespace detail {

// Row indices per label; rows within a label ordered by sample id, labels
// in lexicographic order, so results do not depend on input row order.
inline std::map<std::string, std::vector<std::size_t>> rows_by_label(const FeatureTable& table) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < table.size(); ++i) groups[table[i].label].push_back(i);
  for (auto& [_, rows] : groups)
    std::ranges::sort(rows, [&](std::size_t a, std::size_t b) { return table[a].sample_id < table[b].sample_id; });
  return groups;
}

inline FeatureTable subset(const FeatureTable& table, const std::vector<std::size_t>& rows) {
  FeatureTable out = table.like();
  for (auto i : rows) out.add(table[i]);
  out.sort_by_id();
  return out;
}

} // namespace detail

struct HoldoutSplit {
  FeatureTable train;
  FeatureTable test;
  std::vector<std::string> warnings;
};

/// Per class, round(n * fraction) rows (half up) go to training, keeping at
/// least one row on each side when the class has two or more. A singleton
/// class goes to training with a warning.
inline HoldoutSplit holdout_split(const FeatureTable& table, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw InvalidInput("holdout_split: train fraction must be in (0, 1)");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> train, test;
  std::vector<std::string> warnings;
  for (const auto& [label, rows] : detail::rows_by_label(table)) {
    const auto n = rows.size();
    if (n < 2) {
      warnings.push_back("class '" + label + "' has fewer than 2 samples; assigned to training");
      train.insert(train.end(), rows.begin(), rows.end());
      continue;
    }
    auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction + 0.5));
    n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
    const auto order = seeded_permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i) (i < n_train ? train : test).push_back(rows[order[i]]);
  }
  return {detail::subset(table, train), detail::subset(table, test), std::move(warnings)};
}

struct Fold {
  FeatureTable train;
  FeatureTable test;
};

struct KFoldSplit {
  std::vector<Fold> folds;
  std::vector<std::string> warnings;
};

/// Stratified k-fold. Each class is shuffled and dealt round-robin into the
/// folds; the dealing position carries over between classes so fold sizes
/// differ by at most one.
inline KFoldSplit kfold_split(const FeatureTable& table, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw InvalidInput("kfold_split: k must be >= 2");
  if (k > table.size())
    throw InvalidInput("kfold_split: k=" + std::to_string(k) + " exceeds " + std::to_string(table.size()) + " rows");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> members(k);
  std::vector<std::string> warnings;
  std::size_t dealer = 0;
  for (const auto& [label, rows] : detail::rows_by_label(table)) {
    if (rows.size() < k)
      warnings.push_back("class '" + label + "' has " + std::to_string(rows.size()) + " samples, fewer than k=" +
                         std::to_string(k) + "; stratification is best-effort");
    for (auto i : seeded_permutation(rows.size(), rng)) members[dealer++ % k].push_back(rows[i]);
  }

  KFoldSplit out{{}, std::move(warnings)};
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < k; ++g)
      if (g != f) train.insert(train.end(), members[g].begin(), members[g].end());
    out.folds.push_back({detail::subset(table, train), detail::subset(table, members[f])});
  }
  return out;
}

} // namespace bit
