#pragma once

// Evaluation protocols: normalization is fitted inside each split, on the
// training rows only, then applied to both sides before kNN.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bit/harness/knn.hpp"
#include "bit/harness/metrics.hpp"
#include "bit/harness/normalize.hpp"
#include "bit/harness/split.hpp"

namespace bit {

/// Chooses normalization parameters for one split. Receives the training
/// rows and the full table; the protocol-correct fitter ignores the latter.
using Fitter = std::function<NormalizationParams(const FeatureTable& train, const FeatureTable& all)>;

inline NormalizationParams fit_on_train(const FeatureTable& train, const FeatureTable&) { return fit_minmax(train); }

struct SplitOutcome {
  EvalReport report;
  NormalizationParams params;
  std::vector<std::string> predictions;
  std::vector<std::string> truths;
};

inline SplitOutcome run_split(const FeatureTable& train, const FeatureTable& test, const FeatureTable& all,
                              std::size_t neighbours, const Fitter& fit = fit_on_train) {
  SplitOutcome out;
  out.params = fit(train, all);
  const auto model = knn_train(apply_minmax(train, out.params), neighbours);
  out.predictions = knn_predict(model, apply_minmax(test, out.params));
  out.truths = test.labels();
  out.report = evaluate(out.predictions, out.truths);
  return out;
}

struct HoldoutOutcome {
  SplitOutcome result;
  std::vector<std::string> warnings;
};

inline HoldoutOutcome run_holdout(const FeatureTable& table, double train_fraction, std::size_t neighbours,
                                  std::uint64_t seed, const Fitter& fit = fit_on_train) {
  auto split = holdout_split(table, train_fraction, seed);
  if (split.test.empty()) throw InvalidInput("run_holdout: split left no test rows");
  return {run_split(split.train, split.test, table, neighbours, fit), std::move(split.warnings)};
}

struct KFoldOutcome {
  std::vector<SplitOutcome> folds;
  EvalReport pooled;  // over the concatenated predictions of all folds
  double mean_accuracy = 0.0;
  double stddev_accuracy = 0.0;  // sample standard deviation across folds
  std::vector<std::string> warnings;
};

inline KFoldOutcome run_kfold(const FeatureTable& table, std::size_t k, std::size_t neighbours, std::uint64_t seed,
                              const Fitter& fit = fit_on_train) {
  auto split = kfold_split(table, k, seed);
  KFoldOutcome out;
  out.warnings = std::move(split.warnings);
  std::vector<std::string> predictions, truths;
  for (const auto& fold : split.folds) {
    auto r = run_split(fold.train, fold.test, table, neighbours, fit);
    predictions.insert(predictions.end(), r.predictions.begin(), r.predictions.end());
    truths.insert(truths.end(), r.truths.begin(), r.truths.end());
    out.folds.push_back(std::move(r));
  }
  out.pooled = evaluate(predictions, truths);

  double sum = 0.0;
  for (const auto& f : out.folds) sum += f.report.accuracy;
  out.mean_accuracy = sum / static_cast<double>(k);
  double sq = 0.0;
  for (const auto& f : out.folds) sq += (f.report.accuracy - out.mean_accuracy) * (f.report.accuracy - out.mean_accuracy);
  out.stddev_accuracy = std::sqrt(sq / static_cast<double>(k - 1));
  return out;
}

} // namespace bit
