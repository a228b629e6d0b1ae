#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "crawlrlr/error.hpp"

namespace crawlrlr {

inline double mean_of(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Unbiased sample variance (n-1 denominator).
inline double variance_of(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(n - 1);
}

inline double stddev_of(std::span<const double> xs) {
  return std::sqrt(variance_of(xs));
}

inline double standard_error(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return stddev_of(xs) / std::sqrt(static_cast<double>(xs.size()));
}

// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value. Input must
// be sorted ascending; p in (0, 100].
inline double percentile_nearest_rank(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ArgumentError("percentile of empty sample");
  const double n = static_cast<double>(sorted.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  if (rank < 1) rank = 1;
  if (rank > sorted.size()) rank = sorted.size();
  return sorted[rank - 1];
}

// Lag-1 sample autocorrelation.
inline double lag1_autocorrelation(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean_of(xs);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    den += (xs[i] - m) * (xs[i] - m);
    if (i + 1 < n) num += (xs[i] - m) * (xs[i + 1] - m);
  }
  return den == 0.0 ? 0.0 : num / den;
}

// One-sided paired t statistic for H1: mean(a - b) < 0. Returns the t value;
// the caller compares against the critical point for n-1 degrees of freedom.
inline double paired_t_statistic(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ArgumentError("paired t-test needs two equal samples of size >= 2");
  }
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double se = standard_error(d);
  if (se == 0.0) return mean_of(d) < 0.0 ? -1e30 : (mean_of(d) > 0.0 ? 1e30 : 0.0);
  return mean_of(d) / se;
}

// Pearson chi-square statistic against a uniform expectation.
inline double chi_square_uniform(std::span<const std::size_t> counts) {
  const std::size_t k = counts.size();
  if (k == 0) return 0.0;
  double total = 0.0;
  for (std::size_t c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(k);
  if (expected <= 0.0) return 0.0;
  double stat = 0.0;
  for (std::size_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

}  // namespace crawlrlr
