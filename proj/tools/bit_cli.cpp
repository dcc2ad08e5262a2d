// bit: batch front end for the BiT texture descriptor.
//
//   bit extract    --input <dir> --output <csv> [extraction flags] [--jobs n]
//   bit eval       --features <csv> --protocol holdout:<f>|kfold:<k> --k <n> --seed <s> [--json <path>]
//   bit invariance --image <path> --transforms rot90,flip_h,rescale:0.5,... [--preprocess]
//   bit tree       --image <path> [--channel gray|r|g|b] [--matrix <csv>]
//
// Exit codes: 0 success, 1 invariance violation, 2 usage or input error.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "bit/bit.hpp"
#include "bit/harness/report_json.hpp"
#include "image_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct ExtractionFlags {
  bool no_preprocess = false;
  bool gray_only = false;
  double unsharp_radius = 1.0;
  double unsharp_amount = 1.0;
  int crimmins_iters = 1;

  void attach(CLI::App& cmd) {
    cmd.add_flag("--gray-only", gray_only, "Emit the 14 composite-gray features only");
    cmd.add_option("--unsharp-radius", unsharp_radius, "Gaussian sigma of the unsharp mask")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--unsharp-amount", unsharp_amount, "Unsharp mask gain")->check(CLI::PositiveNumber);
    cmd.add_option("--crimmins-iters", crimmins_iters, "Crimmins iterations")->check(CLI::PositiveNumber);
  }

  bit::ExtractOptions options() const {
    return {!no_preprocess, unsharp_radius, unsharp_amount, crimmins_iters, gray_only};
  }
};

// ---------------------------------------------------------------- extract

struct Sample {
  fs::path path;
  std::string id;
  std::string label;
};

std::vector<Sample> list_dataset(const fs::path& root) {
  std::vector<Sample> samples;
  for (const auto& cls : fs::directory_iterator(root)) {
    if (!cls.is_directory()) continue;
    const auto label = cls.path().filename().string();
    if (label.starts_with('.')) continue;
    for (const auto& file : fs::directory_iterator(cls.path())) {
      const auto name = file.path().filename().string();
      if (!file.is_regular_file() || name.starts_with('.')) continue;
      samples.push_back({file.path(), label + "/" + name, label});
    }
  }
  std::ranges::sort(samples, {}, &Sample::id);
  return samples;
}

int cmd_extract(const fs::path& input, const fs::path& output, const ExtractionFlags& flags, unsigned jobs) {
  std::error_code ec;
  if (!fs::is_directory(input, ec)) {
    std::cerr << "bit extract: cannot read input directory '" << input.string() << "'\n";
    return kExitUsage;
  }
  std::vector<Sample> samples;
  try {
    samples = list_dataset(input);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "bit extract: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto opts = flags.options();

  std::vector<std::optional<bit::BiTVector>> results(samples.size());
  std::vector<std::string> failures(samples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < samples.size(); i = next++) {
      const auto image = bit::io::load_rgb(samples[i].path);
      if (!image) {
        failures[i] = "undecodable image";
        continue;
      }
      try {
        results[i] = bit::extract(*image, opts);
      } catch (const bit::InvalidInput& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  bit::FeatureTable table(bit::feature_names(opts.gray_only));
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!results[i]) {
      std::cerr << "warning: skipping " << samples[i].id << ": " << failures[i] << '\n';
      ++skipped;
      continue;
    }
    table.add({samples[i].id, samples[i].label, std::move(results[i]->values)});
  }

  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "bit extract: cannot write '" << output.string() << "'\n";
    return kExitUsage;
  }
  bit::write_csv(out, table);
  std::cerr << "extracted " << table.size() << " images, skipped " << skipped << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct Protocol {
  enum class Kind { holdout, kfold } kind;
  double fraction = 0.0;
  std::size_t folds = 0;
};

std::optional<Protocol> parse_protocol(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const auto head = text.substr(0, colon), arg = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    if (head == "holdout") {
      const double f = std::stod(arg, &used);
      if (used != arg.size() || !(f > 0.0 && f < 1.0)) return std::nullopt;
      return Protocol{Protocol::Kind::holdout, f, 0};
    }
    if (head == "kfold") {
      const long k = std::stol(arg, &used);
      if (used != arg.size() || k < 2) return std::nullopt;
      return Protocol{Protocol::Kind::kfold, 0.0, static_cast<std::size_t>(k)};
    }
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

std::string rate(double v) {
  if (std::isnan(v)) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

void print_report(std::ostream& out, const bit::EvalReport& r) {
  out << "accuracy   " << rate(r.accuracy) << '\n'
      << "kappa      " << rate(r.kappa) << (r.kappa_degenerate ? "  (degenerate)" : "") << '\n'
      << "macro sens " << rate(r.macro_sensitivity) << '\n'
      << "macro spec " << rate(r.macro_specificity) << "\n\n";

  std::size_t width = 5;
  for (const auto& l : r.labels) width = std::max(width, l.size());
  out << std::left << std::setw(static_cast<int>(width)) << "class" << "  support  sensitivity  specificity\n";
  for (const auto& m : r.per_class)
    out << std::left << std::setw(static_cast<int>(width)) << m.label << "  " << std::right << std::setw(7)
        << m.support << "  " << std::setw(11) << rate(m.sensitivity) << "  " << std::setw(11)
        << rate(m.specificity) << '\n';

  out << "\nconfusion (rows = truth, columns = prediction)\n";
  for (std::size_t t = 0; t < r.labels.size(); ++t) {
    out << std::left << std::setw(static_cast<int>(width)) << r.labels[t];
    for (auto c : r.confusion[t]) out << ' ' << std::right << std::setw(6) << c;
    out << '\n';
  }
}

int cmd_eval(const fs::path& features, const std::string& protocol_text, std::size_t k, std::uint64_t seed,
             const std::string& json_path) {
  const auto protocol = parse_protocol(protocol_text);
  if (!protocol) {
    std::cerr << "bit eval: invalid protocol '" << protocol_text << "' (expected holdout:<f> or kfold:<k>)\n";
    return kExitUsage;
  }
  std::ifstream in(features, std::ios::binary);
  if (!in) {
    std::cerr << "bit eval: cannot read '" << features.string() << "'\n";
    return kExitUsage;
  }

  try {
    const auto table = bit::read_csv(in);
    nlohmann::json json;
    if (protocol->kind == Protocol::Kind::holdout) {
      const auto run = bit::run_holdout(table, protocol->fraction, k, seed);
      for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "protocol   holdout " << protocol->fraction << ", k=" << k << ", seed=" << seed << '\n';
      print_report(std::cout, run.result.report);
      json = bit::to_json(run.result.report);
    } else {
      const auto run = bit::run_kfold(table, protocol->folds, k, seed);
      for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "protocol   " << protocol->folds << "-fold, k=" << k << ", seed=" << seed << '\n'
                << "fold acc   " << rate(run.mean_accuracy) << " +- " << rate(run.stddev_accuracy) << '\n';
      print_report(std::cout, run.pooled);
      json = bit::to_json(run);
    }
    if (!json_path.empty()) {
      std::ofstream js(json_path);
      if (!js) {
        std::cerr << "bit eval: cannot write '" << json_path << "'\n";
        return kExitUsage;
      }
      js << json.dump(2) << '\n';
    }
  } catch (const bit::InvalidInput& e) {
    std::cerr << "bit eval: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- invariance

int cmd_invariance(const fs::path& image_path, const std::string& transforms_text, const bit::ExtractOptions& opts) {
  std::vector<bit::TransformSpec> transforms;
  try {
    transforms = bit::parse_transforms(transforms_text);
  } catch (const bit::InvalidInput& e) {
    std::cerr << "bit invariance: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto image = bit::io::load_rgb(image_path);
  if (!image) {
    std::cerr << "bit invariance: cannot decode '" << image_path.string() << "'\n";
    return kExitUsage;
  }

  bit::InvarianceReport report;
  try {
    report = bit::invariance_check(*image, transforms, opts);
  } catch (const bit::InvalidInput& e) {
    std::cerr << "bit invariance: " << e.what() << '\n';
    return kExitUsage;
  }

  std::cout << "max |difference| per feature (original " << image->width() << "x" << image->height()
            << ", preprocessing " << (opts.preprocess_enabled ? "on" : "off") << ")\n";
  std::cout << std::left << std::setw(16) << "feature" << std::right << std::setw(14) << "original";
  for (const auto& o : report.outcomes) std::cout << std::setw(14) << o.transform.name();
  std::cout << '\n';
  for (std::size_t f = 0; f < report.feature_names.size(); ++f) {
    std::cout << std::left << std::setw(16) << report.feature_names[f] << std::right << std::setw(14)
              << std::setprecision(6) << report.original[f];
    for (const auto& o : report.outcomes) std::cout << std::setw(14) << std::setprecision(4) << o.abs_diff[f];
    std::cout << '\n';
  }

  std::cout << "\nsummary\n";
  for (const auto& o : report.outcomes) {
    std::size_t exact = 0;
    for (auto c : o.checks) exact += c == bit::Check::exact;
    std::string status = "informational";
    if (!o.exact_failures.empty())
      status = "EXACT INVARIANCE VIOLATED on " + std::to_string(o.exact_failures.size()) + " features";
    else if (!o.tolerance_breaches.empty())
      status = "tolerance exceeded on " + std::to_string(o.tolerance_breaches.size()) + " scale-robust features";
    else if (exact > 0)
      status = "exact on " + std::to_string(exact) + " checked features";
    else if (o.transform.kind == bit::TransformKind::rescale)
      status = "scale-robust features within 5%";
    std::cout << std::left << std::setw(14) << o.transform.name() << " max |d| = " << std::setprecision(6)
              << o.max_abs_diff << "  " << status << '\n';
  }
  return report.has_exact_failure() ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------- tree

int cmd_tree(const fs::path& image_path, const std::string& channel, const std::string& matrix_path,
             const bit::ExtractOptions& opts) {
  const auto image = bit::io::load_rgb(image_path);
  if (!image) {
    std::cerr << "bit tree: cannot decode '" << image_path.string() << "'\n";
    return kExitUsage;
  }
  const auto pos = std::ranges::find(bit::kChannelNames, channel);
  if (pos == bit::kChannelNames.end()) {
    std::cerr << "bit tree: unknown channel '" << channel << "'\n";
    return kExitUsage;
  }
  const auto images = bit::descriptor_images(*image, opts);
  const auto hist = bit::build_histogram(images[static_cast<std::size_t>(pos - bit::kChannelNames.begin())]);
  const auto tree = bit::build_tree(hist);
  std::cout << tree.to_text();
  if (!matrix_path.empty()) {
    std::ofstream out(matrix_path);
    if (!out) {
      std::cerr << "bit tree: cannot write '" << matrix_path << "'\n";
      return kExitUsage;
    }
    out << bit::distance_matrix(tree).to_csv(tree.leaves());
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"BiT bio-inspired texture descriptor"};
  app.require_subcommand(1);

  ExtractionFlags ex;
  std::string input, output;
  unsigned jobs = 1;
  auto* extract = app.add_subcommand("extract", "Extract descriptors for a class-per-directory dataset");
  extract->add_option("--input", input, "Dataset root; one subdirectory per class")->required();
  extract->add_option("--output", output, "Feature CSV to write")->required();
  extract->add_flag("--no-preprocess", ex.no_preprocess, "Skip the unsharp and Crimmins filters");
  extract->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ex.attach(*extract);

  std::string features, protocol, json_path;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  auto* eval = app.add_subcommand("eval", "Normalize, classify with kNN and report");
  eval->add_option("--features", features, "Feature CSV")->required();
  eval->add_option("--protocol", protocol, "holdout:<fraction> or kfold:<k>")->required();
  eval->add_option("--k", k, "Neighbours")->check(CLI::PositiveNumber);
  eval->add_option("--seed", seed, "Split seed");
  eval->add_option("--json", json_path, "Also write the report as JSON");

  ExtractionFlags inv;
  bool preprocess = false;
  std::string image_path, transforms;
  auto* invariance = app.add_subcommand("invariance", "Compare descriptors across image transforms");
  invariance->add_option("--image", image_path, "Image file")->required();
  invariance->add_option("--transforms", transforms,
                         "Comma list: rot90,rot180,rot270,flip_h,flip_v,rescale:<f>,gamma:<g>,shuffle:<seed>,"
                         "replicate:<n>")
      ->required();
  invariance->add_flag("--preprocess", preprocess, "Apply the unsharp and Crimmins filters before extraction");
  inv.attach(*invariance);

  ExtractionFlags tr;
  std::string tree_image, channel = "gray", matrix_path;
  auto* tree = app.add_subcommand("tree", "Dump the gray-level tree and distance matrix of one image");
  tree->add_option("--image", tree_image, "Image file")->required();
  tree->add_option("--channel", channel, "gray, r, g or b");
  tree->add_option("--matrix", matrix_path, "Write the distance matrix as CSV");
  tree->add_flag("--no-preprocess", tr.no_preprocess, "Skip the unsharp and Crimmins filters");
  tr.attach(*tree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (extract->parsed()) return cmd_extract(input, output, ex, jobs);
  if (eval->parsed()) return cmd_eval(features, protocol, k, seed, json_path);
  if (invariance->parsed()) {
    inv.no_preprocess = !preprocess;
    return cmd_invariance(image_path, transforms, inv.options());
  }
  if (tree->parsed()) return cmd_tree(tree_image, channel, matrix_path, tr.options());
  return kExitUsage;
}
