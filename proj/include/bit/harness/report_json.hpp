#pragma once

// JSON rendering of evaluation reports:
//   {accuracy, kappa, per_class: [{label, sensitivity, specificity}], confusion}
// Undefined per-class rates serialize as null.

#include <cmath>

#include "json.hpp"

#include "bit/harness/metrics.hpp"
#include "bit/harness/protocol.hpp"

namespace bit {

inline nlohmann::json rate_json(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& m : r.per_class)
    per_class.push_back({{"label", m.label},
                         {"support", m.support},
                         {"sensitivity", rate_json(m.sensitivity)},
                         {"specificity", rate_json(m.specificity)}});
  return {{"accuracy", r.accuracy},
          {"kappa", r.kappa},
          {"kappa_degenerate", r.kappa_degenerate},
          {"macro_sensitivity", rate_json(r.macro_sensitivity)},
          {"macro_specificity", rate_json(r.macro_specificity)},
          {"labels", r.labels},
          {"per_class", per_class},
          {"confusion", r.confusion}};
}

/// Pooled report plus the per-fold accuracy summary.
inline nlohmann::json to_json(const KFoldOutcome& k) {
  auto j = to_json(k.pooled);
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : k.folds) folds.push_back(f.report.accuracy);
  j["fold_accuracies"] = folds;
  j["mean_accuracy"] = k.mean_accuracy;
  j["stddev_accuracy"] = k.stddev_accuracy;
  return j;
}

} // namespace bit
