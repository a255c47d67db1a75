#pragma once

#include <cmath>
#include <utility>

namespace anonq::harness {

/// Two-sided 99% normal quantile used for every confidence interval here.
inline constexpr double kZ99 = 2.5758293035489004;

/// Wilson score interval for a binomial proportion at 99% confidence.
inline std::pair<double, double> wilson_interval(long successes, long trials,
                                                 double z = kZ99) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half =
      (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double lo = centre - half;
  double hi = centre + half;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

/// 3-sigma binomial envelope around an expected probability.
inline double binomial_sigma(double p, long trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace anonq::harness
