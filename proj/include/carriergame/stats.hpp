#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace carriergame {

/// Exact pairwise (binary-tree) summation over a contiguous range. The result
/// depends only on the element order, never on how the work that produced the
/// elements was scheduled.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline constexpr double kNormal95 = 1.959963984540054;

/// 95% half-width for a sample mean (normal approximation).
inline double mean_half_width(double sum, double sum_sq, std::size_t n) {
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  double var = sum_sq / static_cast<double>(n) - mean * mean;
  if (var < 0.0) var = 0.0;
  var *= static_cast<double>(n) / static_cast<double>(n - 1);
  return kNormal95 * std::sqrt(var / static_cast<double>(n));
}

/// 95% half-width for a binomial frequency.
inline double binomial_half_width(double p_hat, std::size_t n) {
  if (n == 0) return 0.0;
  double v = p_hat * (1.0 - p_hat);
  if (v < 0.0) v = 0.0;
  return kNormal95 * std::sqrt(v / static_cast<double>(n));
}

}  // namespace carriergame
