#pragma once

// Accuracy, one-vs-rest sensitivity/specificity and Cohen's kappa.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "bit/error.hpp"

namespace bit {

struct ClassMetrics {
  std::string label;
  std::size_t support = 0;  // true instances
  double sensitivity = 0.0; // NaN when the class never occurs in the truths
  double specificity = 0.0; // NaN when every truth belongs to this class
};

struct EvalReport {
  double accuracy = 0.0;
  double kappa = 0.0;
  bool kappa_degenerate = false;
  double macro_sensitivity = 0.0;
  double macro_specificity = 0.0;
  std::vector<std::string> labels;
  /// confusion[t][p]: rows are true labels, columns predictions.
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<ClassMetrics> per_class;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& row : confusion)
      for (auto c : row) n += c;
    return n;
  }
};

inline double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

/// Builds the report over the sorted union of labels seen in either list.
inline EvalReport evaluate(const std::vector<std::string>& predictions, const std::vector<std::string>& truths) {
  if (predictions.size() != truths.size())
    throw InvalidInput("evaluate: " + std::to_string(predictions.size()) + " predictions for " +
                       std::to_string(truths.size()) + " truths");
  if (truths.empty()) throw InvalidInput("evaluate: nothing to evaluate");

  std::set<std::string> universe(truths.begin(), truths.end());
  universe.insert(predictions.begin(), predictions.end());
  EvalReport r;
  r.labels.assign(universe.begin(), universe.end());
  const auto c = r.labels.size();
  auto index_of = [&](const std::string& l) {
    return static_cast<std::size_t>(std::ranges::lower_bound(r.labels, l) - r.labels.begin());
  };

  r.confusion.assign(c, std::vector<std::size_t>(c, 0));
  for (std::size_t i = 0; i < truths.size(); ++i) ++r.confusion[index_of(truths[i])][index_of(predictions[i])];

  const auto n = static_cast<double>(truths.size());
  std::vector<double> row_sum(c, 0.0), col_sum(c, 0.0);
  double trace = 0.0;
  for (std::size_t t = 0; t < c; ++t) {
    for (std::size_t p = 0; p < c; ++p) {
      row_sum[t] += static_cast<double>(r.confusion[t][p]);
      col_sum[p] += static_cast<double>(r.confusion[t][p]);
    }
    trace += static_cast<double>(r.confusion[t][t]);
  }
  r.accuracy = trace / n;

  double sens_sum = 0.0, spec_sum = 0.0;
  std::size_t sens_n = 0, spec_n = 0;
  for (std::size_t k = 0; k < c; ++k) {
    const double tp = static_cast<double>(r.confusion[k][k]);
    const double fn = row_sum[k] - tp;
    const double fp = col_sum[k] - tp;
    const double tn = n - tp - fn - fp;
    ClassMetrics m{r.labels[k], static_cast<std::size_t>(row_sum[k]), nan_value(), nan_value()};
    if (tp + fn > 0.0) {
      m.sensitivity = tp / (tp + fn);
      sens_sum += m.sensitivity;
      ++sens_n;
    }
    if (tn + fp > 0.0) {
      m.specificity = tn / (tn + fp);
      spec_sum += m.specificity;
      ++spec_n;
    }
    r.per_class.push_back(std::move(m));
  }
  r.macro_sensitivity = sens_n ? sens_sum / static_cast<double>(sens_n) : nan_value();
  r.macro_specificity = spec_n ? spec_sum / static_cast<double>(spec_n) : nan_value();

  double expected = 0.0;
  for (std::size_t k = 0; k < c; ++k) expected += (row_sum[k] / n) * (col_sum[k] / n);
  if (1.0 - expected > 0.0) {
    r.kappa = (r.accuracy - expected) / (1.0 - expected);
  } else if (r.accuracy == 1.0) {
    r.kappa = 1.0;
  } else {
    r.kappa = 0.0;
    r.kappa_degenerate = true;
  }
  return r;
}

} // namespace bit
