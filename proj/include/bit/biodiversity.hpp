#pragma once

// Species richness, abundance and evenness indices over a SpeciesHistogram.
// Natural logarithms throughout.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bit/ecosystem.hpp"
#include "bit/error.hpp"

namespace bit {

/// Margalef: (S - 1) / ln N.
inline double margalef(const SpeciesHistogram& hist) {
  if (hist.total() < 2) throw InvalidInput("margalef: needs at least 2 individuals");
  const auto s = static_cast<double>(hist.richness());
  return (s - 1.0) / std::log(static_cast<double>(hist.total()));
}

/// Menhinick as S / N (not the S / sqrt(N) textbook variant).
inline double menhinick(const SpeciesHistogram& hist) {
  return static_cast<double>(hist.richness()) / static_cast<double>(hist.total());
}

/// Berger-Parker dominance: Nmax / N.
inline double berger_parker(const SpeciesHistogram& hist) {
  return static_cast<double>(hist.max_count()) / static_cast<double>(hist.total());
}

inline constexpr double kFisherAlphaSaturated = 1e6;

/// Residual of Fisher's richness relation, alpha ln(1 + N/alpha) - S.
inline double fisher_residual(double alpha, double richness, double total) {
  return alpha * std::log1p(total / alpha) - richness;
}

/// Fisher's alpha: the root of S = alpha ln(1 + N/alpha). The relation has no
/// finite root when every individual is its own species (S = N); that case
/// returns kFisherAlphaSaturated flagged as degenerate.
inline Flagged fisher_alpha(std::size_t richness, Count total) {
  if (richness < 1 || total < 1 || richness > total)
    throw InvalidInput("fisher_alpha: need 1 <= S <= N");
  if (richness == total) return {kFisherAlphaSaturated, true};

  const auto s = static_cast<double>(richness);
  const auto n = static_cast<double>(total);
  double lo = 1e-6, hi = 1e6;
  if (fisher_residual(lo, s, n) >= 0.0)
    throw NumericFailure("fisher_alpha: lower bracket not below the root");
  for (int grow = 0; fisher_residual(hi, s, n) <= 0.0; ++grow) {
    if (grow == 40) throw NumericFailure("fisher_alpha: no sign change in bracket");
    hi *= 10.0;
  }

  // The root can sit anywhere in [1e-6, 1e46]; split geometrically.
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    const double f = fisher_residual(mid, s, n);
    if (f == 0.0) return {mid, false};
    (f < 0.0 ? lo : hi) = mid;
  }
  const double alpha =
      std::abs(fisher_residual(lo, s, n)) < std::abs(fisher_residual(hi, s, n)) ? lo : hi;
  if (std::abs(fisher_residual(alpha, s, n)) >= 1e-6 * std::max(1.0, s))
    throw NumericFailure("fisher_alpha: did not converge for S=" + std::to_string(richness) +
                         " N=" + std::to_string(total));
  return {alpha, false};
}

inline Flagged fisher_alpha(const SpeciesHistogram& hist) {
  return fisher_alpha(hist.richness(), hist.total());
}

/// Kempton-Taylor Q: interquartile slope of the cumulative abundance curve.
/// Quartile abundances are read at ranks ceil(S/4) and ceil(3S/4) of the
/// ascending abundance list. R1 == R2 leaves the slope undefined; that
/// returns 0 flagged as degenerate.
inline Flagged kempton_taylor(const SpeciesHistogram& hist) {
  std::vector<Count> abundance;
  abundance.reserve(hist.richness());
  for (const auto& sp : hist.entries()) abundance.push_back(sp.count);
  std::ranges::sort(abundance);

  const std::size_t s = abundance.size();
  const std::size_t rank1 = (s + 3) / 4;      // ceil(S/4)
  const std::size_t rank2 = (3 * s + 3) / 4;  // ceil(3S/4)
  const Count r1 = abundance[rank1 - 1];
  const Count r2 = abundance[rank2 - 1];
  if (r1 == r2) return {0.0, true};

  double numerator = 0.0;
  for (Count a : abundance) {
    if (a == r1 || a == r2)
      numerator += 0.5;
    else if (a > r1 && a < r2)
      numerator += 1.0;
  }
  return {numerator / std::log(static_cast<double>(r2) / static_cast<double>(r1)), false};
}

/// McIntosh evenness: sqrt(sum n_i^2 / ((N - S + 1)^2 + S - 1)).
inline double mcintosh_evenness(const SpeciesHistogram& hist) {
  long double squares = 0.0L;
  for (const auto& sp : hist.entries())
    squares += static_cast<long double>(sp.count) * static_cast<long double>(sp.count);
  const auto n = static_cast<long double>(hist.total());
  const auto s = static_cast<long double>(hist.richness());
  const long double spread = n - s + 1.0L;
  return static_cast<double>(std::sqrt(squares / (spread * spread + s - 1.0L)));
}

/// Shannon-Wiener entropy -sum p_i ln p_i.
inline double shannon_wiener(const SpeciesHistogram& hist) {
  if (hist.richness() == 1) return 0.0;
  const auto n = static_cast<double>(hist.total());
  double h = 0.0;
  for (const auto& sp : hist.entries()) {
    const double p = static_cast<double>(sp.count) / n;
    h -= p * std::log(p);
  }
  return std::clamp(h, 0.0, std::log(static_cast<double>(hist.richness())));
}

struct BiodiversityIndices {
  double d_mg = 0.0;
  double d_mn = 0.0;
  double d_bp = 0.0;
  double d_f = 0.0;
  double d_kt = 0.0;
  double e_m = 0.0;
  double d_sw = 0.0;
  bool fisher_saturated = false;
  bool kempton_degenerate = false;
};

inline BiodiversityIndices biodiversity_indices(const SpeciesHistogram& hist) {
  const auto fisher = fisher_alpha(hist);
  const auto kt = kempton_taylor(hist);
  return {margalef(hist),  menhinick(hist),         berger_parker(hist), fisher.value,
          kt.value,        mcintosh_evenness(hist), shannon_wiener(hist), fisher.degenerate,
          kt.degenerate};
}

} // namespace bit
