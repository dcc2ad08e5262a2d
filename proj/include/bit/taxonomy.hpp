#pragma once

// Phylogeny over gray levels (recursive pixel-mean thresholding), the leaf
// distance matrix it induces, and the seven distance-based indices.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bit/ecosystem.hpp"
#include "bit/error.hpp"

namespace bit {

__extension__ typedef unsigned __int128 Wide;

/// Binary partition tree. Every node covers a contiguous run [first, last)
/// of the ascending species list, so leaf i is species i of the histogram.
class PhyloTree {
public:
  struct Node {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t depth = 0;
    double threshold = 0.0;  // internal nodes only
    int left = -1;
    int right = -1;
    bool is_leaf() const noexcept { return left < 0; }
  };

  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& root() const noexcept { return nodes_.front(); }
  std::span<const Level> leaves() const noexcept { return levels_; }
  std::size_t leaf_count() const noexcept { return levels_.size(); }
  std::size_t internal_count() const noexcept {
    return static_cast<std::size_t>(std::ranges::count_if(nodes_, [](const Node& n) { return !n.is_leaf(); }));
  }

  /// Edge count from the root to each leaf, indexed like leaves().
  std::vector<std::size_t> leaf_depths() const {
    std::vector<std::size_t> depth(levels_.size());
    for (const auto& n : nodes_)
      if (n.is_leaf()) depth[n.first] = n.depth;
    return depth;
  }

  /// Indented text rendering, one node per line.
  std::string to_text() const {
    std::ostringstream out;
    write_node(out, 0);
    return out.str();
  }

private:
  friend PhyloTree build_tree(const SpeciesHistogram& hist);

  void write_node(std::ostringstream& out, int index) const {
    const auto& n = nodes_[static_cast<std::size_t>(index)];
    out << std::string(2 * n.depth, ' ');
    if (n.is_leaf()) {
      out << "leaf " << static_cast<int>(levels_[n.first]) << '\n';
      return;
    }
    out << "split < " << n.threshold << " {";
    for (std::size_t i = n.first; i < n.last; ++i)
      out << (i == n.first ? "" : ",") << static_cast<int>(levels_[i]);
    out << "}\n";
    write_node(out, n.left);
    write_node(out, n.right);
  }

  std::vector<Level> levels_;
  std::vector<Node> nodes_;
};

/// Splits recursively at the pixel-weighted mean level of the current species
/// set: levels below the mean go left, levels at or above it go right. The
/// comparison level < mean is evaluated exactly as level * count < sum.
inline PhyloTree build_tree(const SpeciesHistogram& hist) {
  PhyloTree tree;
  const auto entries = hist.entries();
  for (const auto& sp : entries) tree.levels_.push_back(sp.level);

  tree.nodes_.push_back({0, entries.size(), 0, 0.0, -1, -1});
  for (std::size_t cursor = 0; cursor < tree.nodes_.size(); ++cursor) {
    const auto first = tree.nodes_[cursor].first;
    const auto last = tree.nodes_[cursor].last;
    const auto depth = tree.nodes_[cursor].depth;
    if (last - first < 2) continue;

    Count count = 0;
    std::uint64_t weighted = 0;
    for (std::size_t i = first; i < last; ++i) {
      count += entries[i].count;
      weighted += static_cast<std::uint64_t>(entries[i].level) * entries[i].count;
    }
    std::size_t split = first;
    while (split < last && static_cast<Wide>(entries[split].level) * count < weighted) ++split;

    auto& node = tree.nodes_[cursor];
    node.threshold = static_cast<double>(weighted) / static_cast<double>(count);
    node.left = static_cast<int>(tree.nodes_.size());
    node.right = node.left + 1;
    tree.nodes_.push_back({first, split, depth + 1, 0.0, -1, -1});
    tree.nodes_.push_back({split, last, depth + 1, 0.0, -1, -1});
  }
  return tree;
}

/// Symmetric S x S matrix of leaf-to-leaf edge counts.
class DistanceMatrix {
public:
  explicit DistanceMatrix(std::size_t size) : size_(size), d_(size * size, 0) {}

  std::size_t size() const noexcept { return size_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * size_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t v) noexcept {
    d_[i * size_ + j] = v;
    d_[j * size_ + i] = v;
  }

  std::uint64_t row_sum(std::size_t i) const noexcept {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < size_; ++j) s += (*this)(i, j);
    return s;
  }

  std::string to_csv(std::span<const Level> labels) const {
    std::ostringstream out;
    out << "level";
    for (Level l : labels) out << ',' << static_cast<int>(l);
    out << '\n';
    for (std::size_t i = 0; i < size_; ++i) {
      out << static_cast<int>(labels[i]);
      for (std::size_t j = 0; j < size_; ++j) out << ',' << (*this)(i, j);
      out << '\n';
    }
    return out.str();
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
  std::size_t size_;
  std::vector<std::uint32_t> d_;
};

/// Path lengths through the lowest common ancestor: every pair of leaves is
/// separated at exactly one internal node, whose left and right runs are
/// crossed once.
inline DistanceMatrix distance_matrix(const PhyloTree& tree) {
  DistanceMatrix dm(tree.leaf_count());
  const auto depth = tree.leaf_depths();
  const auto nodes = tree.nodes();
  for (const auto& n : nodes) {
    if (n.is_leaf()) continue;
    const auto& left = nodes[static_cast<std::size_t>(n.left)];
    for (std::size_t i = left.first; i < left.last; ++i)
      for (std::size_t j = left.last; j < n.last; ++j)
        dm.set(i, j, static_cast<std::uint32_t>(depth[i] + depth[j] - 2 * n.depth));
  }
  return dm;
}

namespace detail {

inline void check_sizes(const SpeciesHistogram& hist, const DistanceMatrix& dm) {
  if (hist.richness() != dm.size()) throw InvalidInput("taxonomy: histogram and matrix sizes differ");
}

// sum_{i<j} d_ij x_i x_j, exact.
inline Wide weighted_pair_sum(const SpeciesHistogram& hist, const DistanceMatrix& dm) {
  check_sizes(hist, dm);
  const auto e = hist.entries();
  Wide sum = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      sum += static_cast<Wide>(dm(i, j)) * e[i].count * e[j].count;
  return sum;
}

// sum_{i<j} x_i x_j = (N^2 - sum x_i^2) / 2, exact.
inline Wide cross_pair_count(const SpeciesHistogram& hist) {
  Wide squares = 0;
  for (const auto& sp : hist.entries()) squares += static_cast<Wide>(sp.count) * sp.count;
  const Wide n = hist.total();
  return (n * n - squares) / 2;
}

inline double wide_ratio(Wide num, Wide den) {
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

} // namespace detail

/// Taxonomic diversity: mean path length between two individuals drawn
/// without replacement.
inline double taxonomic_diversity(const SpeciesHistogram& hist, const DistanceMatrix& dm) {
  if (hist.total() < 2) throw InvalidInput("taxonomic_diversity: needs at least 2 individuals");
  const Wide n = hist.total();
  return detail::wide_ratio(detail::weighted_pair_sum(hist, dm), n * (n - 1) / 2);
}

/// Taxonomic distinctness: mean path length between two individuals of
/// different species. Single-species histograms give 0, flagged.
inline Flagged taxonomic_distinctness(const SpeciesHistogram& hist, const DistanceMatrix& dm) {
  detail::check_sizes(hist, dm);
  if (hist.richness() < 2) return {0.0, true};
  return {detail::wide_ratio(detail::weighted_pair_sum(hist, dm), detail::cross_pair_count(hist)), false};
}

/// Pair count S(S-1)/2 times the abundance-weighted mean pairwise distance.
inline double sum_phylogenetic_distances(const SpeciesHistogram& hist, const DistanceMatrix& dm) {
  const auto s = hist.richness();
  if (s < 2) return 0.0;
  const double pairs = static_cast<double>(s) * static_cast<double>(s - 1) / 2.0;
  return pairs * taxonomic_distinctness(hist, dm).value;
}

/// Mean over species of the distance to the nearest other species.
inline double nn_distance(const DistanceMatrix& dm) {
  const auto s = dm.size();
  if (s < 2) return 0.0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < s; ++i) {
    std::uint32_t nearest = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t j = 0; j < s; ++j)
      if (j != i) nearest = std::min(nearest, dm(i, j));
    total += nearest;
  }
  return static_cast<double>(total) / static_cast<double>(s);
}

/// Sum of d_ij over ordered pairs i != j.
inline double extensive_quadratic_entropy(const DistanceMatrix& dm) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < dm.size(); ++i) total += dm.row_sum(i);
  return static_cast<double>(total);
}

inline double intensive_quadratic_entropy(const DistanceMatrix& dm) {
  const auto s = static_cast<double>(dm.size());
  return extensive_quadratic_entropy(dm) / (s * s);
}

/// Sum over species of the mean distance to all other species. The row sums
/// are added as integers so the result is rounded once.
inline double total_taxonomic_distinctness(const DistanceMatrix& dm) {
  const auto s = dm.size();
  if (s < 2) return 0.0;
  return extensive_quadratic_entropy(dm) / static_cast<double>(s - 1);
}

struct TaxonomicIndices {
  double delta = 0.0;
  double delta_star = 0.0;
  double s_pd = 0.0;
  double d_nn = 0.0;
  double e_eq = 0.0;
  double e_iq = 0.0;
  double d_tt = 0.0;
};

inline TaxonomicIndices taxonomic_indices(const SpeciesHistogram& hist, const DistanceMatrix& dm) {
  return {taxonomic_diversity(hist, dm),    taxonomic_distinctness(hist, dm).value,
          sum_phylogenetic_distances(hist, dm), nn_distance(dm),
          extensive_quadratic_entropy(dm), intensive_quadratic_entropy(dm),
          total_taxonomic_distinctness(dm)};
}

inline TaxonomicIndices taxonomic_indices(const SpeciesHistogram& hist) {
  return taxonomic_indices(hist, distance_matrix(build_tree(hist)));
}

} // namespace bit
