// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "bit/bit.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace bit;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExtractOptions raw() {
  ExtractOptions o;
  o.preprocess_enabled = false;
  return o;
}

Verdict exact_invariance() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t compared = 0;
  Verdict v;
  for (int i = 0; i < 20; ++i) {
    const auto side = [&] { return 16 + rng() % 113; };
    const auto w = side(), h = side();
    const auto img = oracle::random_rgb(rng, w, h);
    const auto report = invariance_check(
        img,
        {TransformSpec::rot90(), TransformSpec::rot180(), TransformSpec::rot270(), TransformSpec::flip_h(),
         TransformSpec::flip_v(), TransformSpec::shuffle(rng())},
        raw());
    for (const auto& o : report.outcomes) {
      compared += o.abs_diff.size();
      if (o.max_abs_diff != 0.0) {
        v.pass = false;
        v.detail = "image " + std::to_string(i) + " " + o.transform.name() + " differs";
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 10.0) v.pass = false;
  if (v.detail.empty()) v.detail = std::to_string(compared) + " features bit-identical";
  v.detail += ", " + fmt("%.2f s", secs);
  return v;
}

Verdict scale_invariance() {
  Verdict v;
  std::mt19937_64 rng(7);
  double worst_rel = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto img = oracle::random_rgb(rng, 16 + rng() % 40, 16 + rng() % 40);
    const auto big = apply_transform(img, TransformSpec::replicate(2));
    const auto a = extract(img, raw()), b = extract(big, raw());
    for (auto c : {Channel::gray, Channel::r, Channel::g, Channel::b})
      for (auto idx : kScaleRobustIndices)
        if (a.at(c, idx) != b.at(c, idx)) v.pass = false;

    const auto grad = synthetic::make_gradient(64 + rng() % 64, 64 + rng() % 64, rng);
    const auto g = extract(grad, raw()), h = extract(apply_transform(grad, TransformSpec::rescale(0.5)), raw());
    for (auto c : {Channel::gray, Channel::r, Channel::g, Channel::b})
      for (auto idx : kScaleRobustIndices) worst_rel = std::max(worst_rel, relative_difference(g.at(c, idx), h.at(c, idx)));
  }
  if (!(worst_rel < kRescaleTolerance)) v.pass = false;
  v.detail = "replication exact on 10 images; worst rescale rel diff " + fmt("%.4f", worst_rel);
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto img = oracle::random_gray(rng, 1 + rng() % 8, 2 + rng() % 7, 1 + static_cast<int>(rng() % 6));
    const auto hist = build_histogram(img);
    const auto dm = distance_matrix(build_tree(hist));
    const auto brute = oracle::brute_taxonomy(img);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    const auto tax = taxonomic_indices(hist, dm);
    for (auto [got, want] : {std::pair{tax.delta, brute.delta}, {tax.delta_star, brute.delta_star}, {tax.s_pd, brute.s_pd}})
      if (got != want) worst = std::max(worst, rel(got, want));

    // Direct matrix sums.
    const auto s = dm.size();
    double total = 0.0;
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < s; ++c) total += dm(r, c);
    const double e_eq = total, e_iq = total / static_cast<double>(s * s);
    const double d_tt = s > 1 ? total / static_cast<double>(s - 1) : 0.0;
    if (tax.e_eq != e_eq || tax.e_iq != e_iq || tax.d_tt != d_tt) {
      v.pass = false;
      v.detail = "matrix-sum mismatch on image " + std::to_string(i);
    }
  }
  if (!(worst <= 1e-9)) v.pass = false;
  if (v.detail.empty()) v.detail = "200 images, worst pair-loop rel diff " + fmt("%.3g", worst);
  return v;
}

Verdict toy_values() {
  std::vector<Level> px;
  px.insert(px.end(), 6, 255);
  px.insert(px.end(), 5, 128);
  px.insert(px.end(), 5, 0);
  const auto hist = build_histogram(GrayImage(4, 4, px));
  const auto bio = biodiversity_indices(hist);
  const auto tax = taxonomic_indices(hist);
  // McIntosh is checked against sqrt(86/198) = 0.6590474; the commonly
  // quoted 0.659049 is 1.6e-6 away from it.
  const std::pair<double, double> checks[] = {
      {bio.d_mg, 0.721348},  {bio.d_mn, 0.1875},  {bio.d_bp, 0.375},          {bio.d_sw, 1.094780},
      {bio.e_m, std::sqrt(86.0 / 198.0)},         {tax.delta, 1.916667},      {tax.delta_star, 2.705882},
      {tax.s_pd, 8.117647},  {tax.d_nn, 2.333333}, {tax.e_eq, 16.0},          {tax.e_iq, 1.777778},
      {tax.d_tt, 8.0}};
  Verdict v;
  double worst = 0.0;
  for (auto [got, want] : checks) worst = std::max(worst, std::abs(got - want));
  v.pass = worst <= 1e-6;
  v.detail = "12 values, worst abs diff " + fmt("%.2g", worst) + "; mcintosh " + fmt("%.7f", bio.e_m);
  return v;
}

Verdict strip_tree() {
  const SpeciesHistogram strip({{6, 1}, {75, 1}, {117, 1}, {141, 1}, {230, 1}});
  const auto tree = build_tree(strip);
  const auto& nodes = tree.nodes();
  auto span_of = [&](int i) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    return std::pair{n.first, n.last};
  };
  const auto& root = tree.root();
  const auto& right = nodes[static_cast<std::size_t>(root.right)];
  bool ok = span_of(root.left) == std::pair<std::size_t, std::size_t>{0, 2} &&
            span_of(root.right) == std::pair<std::size_t, std::size_t>{2, 5} &&
            span_of(right.left) == std::pair<std::size_t, std::size_t>{2, 4} &&
            span_of(right.right) == std::pair<std::size_t, std::size_t>{4, 5};
  const auto dm = distance_matrix(tree);
  ok = ok && dm(0, 1) == 2 && dm(2, 3) == 2 && dm(2, 4) == 3 && dm(0, 4) == 4 && dm(0, 2) == 5;
  return {ok, "thresholds " + fmt("%.4f", root.threshold) + " / " + fmt("%.4f", right.threshold)};
}

Verdict fisher_grid() {
  Verdict v;
  double worst = 0.0;
  std::size_t points = 0;
  // 10 values of N spread log-uniformly up to 1e4, 5 richness values each.
  for (int i = 0; i < 10; ++i) {
    const auto n = static_cast<Count>(std::llround(std::pow(10.0, 0.4 + 3.6 * i / 9.0)));
    for (int j = 0; j < 5; ++j) {
      auto s = static_cast<std::size_t>(1 + (n - 2) * j / 4);
      s = std::min<std::size_t>(s, n - 1);
      const auto a = fisher_alpha(s, n);
      const double bound = 1e-6 * std::max(1.0, static_cast<double>(s));
      const double r = std::abs(fisher_residual(a.value, static_cast<double>(s), static_cast<double>(n)));
      worst = std::max(worst, r / bound);
      ++points;
    }
  }
  v.pass = points == 50 && worst < 1.0;
  v.detail = std::to_string(points) + " grid points, worst residual/bound " + fmt("%.3g", worst);
  return v;
}

Verdict classification() {
  std::mt19937_64 rng(31337);
  FeatureTable table(feature_names());
  const auto& classes = synthetic::texture_classes();
  for (const auto& cls : classes)
    for (int i = 0; i < 40; ++i) {
      char id[64];
      std::snprintf(id, sizeof id, "%s/%02d", cls.name.c_str(), i);
      table.add({id, cls.name, extract(synthetic::make_texture(cls, 64, rng)).values});
    }
  Verdict v;
  std::string accs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto out = run_holdout(table, 0.7, 1, seed);
    accs += (seed > 1 ? " " : "") + fmt("%.3f", out.result.report.accuracy);
    if (out.result.report.accuracy < 0.9) v.pass = false;
  }
  v.detail = "accuracy for seeds 1-5: " + accs;
  return v;
}

Verdict protocol_hygiene() {
  std::mt19937_64 rng(5);
  FeatureTable table(feature_names(true));
  for (int i = 0; i < 30; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "s%02d", i);
    ExtractOptions o = raw();
    o.gray_only = true;
    table.add({id, i % 3 == 0 ? "x" : "y", extract(oracle::random_rgb(rng, 12, 12), o).values});
  }
  const Fitter leak = [](const FeatureTable&, const FeatureTable& all) { return fit_minmax(all); };
  const auto good = run_kfold(table, 5, 1, 17);
  const auto bad = run_kfold(table, 5, 1, 17, leak);
  const auto split = kfold_split(table, 5, 17);
  bool refit = true, detected = false;
  for (std::size_t f = 0; f < 5; ++f) {
    refit = refit && good.folds[f].params == fit_minmax(split.folds[f].train);
    detected = detected || !(good.folds[f].params == bad.folds[f].params);
  }
  return {refit && detected, std::string("per-fold params from training rows: ") + (refit ? "yes" : "no") +
                                 ", leak mutation detected: " + (detected ? "yes" : "no")};
}

Verdict throughput() {
  std::mt19937_64 rng(3);
  const auto img = synthetic::make_texture(synthetic::texture_classes()[1], 128, rng);
  extract(img);  // warm-up
  double best = 1e9;
  for (int i = 0; i < 5; ++i) {
    const auto t0 = Clock::now();
    const auto v = extract(img);
    best = std::min(best, seconds_since(t0));
    if (v.size() != kFeatureCount) return {false, "wrong feature count"};
  }
  return {best * 1000.0 <= 100.0, "128x128 extraction " + fmt("%.1f ms", best * 1000.0)};
}

} // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"exact transform invariance", exact_invariance},
      {"replication and rescale invariance", scale_invariance},
      {"brute-force oracle equivalence", oracle_equivalence},
      {"worked toy values", toy_values},
      {"tree construction", strip_tree},
      {"fisher alpha solver", fisher_grid},
      {"desk-scale classification", classification},
      {"protocol hygiene", protocol_hygiene},
      {"throughput", throughput},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] %d. %s: %s\n", v.pass ? "PASS" : "FAIL", n, name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
