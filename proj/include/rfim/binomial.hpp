#pragma once
#include <cmath>
#include <limits>
#include <stdexcept>

// Small exact-distribution helpers for a sum of n independent fair signs
// S = sum of +-1 = 2K - n with K ~ Binomial(n, 1/2).  Used as independent
// cross-checks of the closed-form concentration bounds.

namespace rfim {

inline double log_choose(long long n, long long k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

/** P[K = k] for K ~ Binomial(n, 1/2). */
inline double binomial_half_pmf(long long n, long long k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(log_choose(n, k) - static_cast<double>(n) * std::log(2.0));
}

/** sup over real intervals I of length tau of P[S in I], S = 2K - n.
 *  S lives on a lattice of spacing 2, so a closed window of width tau holds
 *  at most floor(tau/2) + 1 support points; the sup is the largest sum of
 *  that many consecutive pmf values. */
inline double binomial_sup_interval(long long n, double tau) {
  if (n < 1) throw std::invalid_argument("binomial_sup_interval: n must be at least 1");
  if (!(tau > 0.0)) throw std::invalid_argument("binomial_sup_interval: tau must be positive");
  const long long r = static_cast<long long>(std::floor(tau / 2.0)) + 1;
  double best = 0.0;
  for (long long k0 = 0; k0 + r - 1 <= n; ++k0) {
    double acc = 0.0;
    for (long long k = k0; k < k0 + r; ++k) acc += binomial_half_pmf(n, k);
    if (acc > best) best = acc;
  }
  return best;
}

/** P[S <= s] for S = 2K - n. */
inline double binomial_cdf_le(long long n, double s) {
  const long long kmax = static_cast<long long>(std::floor((s + static_cast<double>(n)) / 2.0));
  double acc = 0.0;
  for (long long k = 0; k <= kmax && k <= n; ++k) acc += binomial_half_pmf(n, k);
  return acc;
}

/** Standard normal CDF. */
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/** sup over intervals of length tau of the N(0, n) mass: erf(tau / (2 sqrt(2n))). */
inline double gaussian_sup_interval(long long n, double tau) {
  if (n < 1) throw std::invalid_argument("gaussian_sup_interval: n must be at least 1");
  if (!(tau > 0.0)) throw std::invalid_argument("gaussian_sup_interval: tau must be positive");
  return std::erf(tau / (2.0 * std::sqrt(2.0 * static_cast<double>(n))));
}

}  // namespace rfim
