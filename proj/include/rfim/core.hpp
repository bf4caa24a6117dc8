#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rfim {

enum class DisorderKind { bernoulli, gaussian, uniform_subgaussian };

std::string to_string(DisorderKind k);
DisorderKind disorder_kind_from_string(const std::string& s);

/** Model parameters: coupling exponent alpha in [0,1), nearest-neighbour
 *  coupling j1 > 1, inverse temperature beta > 0, field strength theta >= 0. */
struct ModelParams {
  double alpha = 0.0;
  double j1 = 10.0;
  double beta = 1.0;
  double theta = 0.0;
  DisorderKind disorder_kind = DisorderKind::bernoulli;
  double subgaussian_a = 1.0;  // scale parameter recorded for uniform_subgaussian
};

/** Throws std::domain_error when a parameter is outside its admissible range. */
void validate(const ModelParams& p);

/** Spin configuration on the integer window [lo, hi] with a constant boundary
 *  condition eta outside. Spins are +1/-1. */
struct SpinWindow {
  int lo = 0;
  int hi = -1;
  std::vector<signed char> spins;  // index i - lo
  signed char boundary = +1;

  int size() const { return hi - lo + 1; }
  bool contains(int i) const { return i >= lo && i <= hi; }
  signed char at(int i) const { return spins[static_cast<size_t>(i - lo)]; }
  void set(int i, signed char v) { spins[static_cast<size_t>(i - lo)] = v; }
  /** Spin at i, or the boundary value when i is outside the window. */
  signed char extended(int i) const { return contains(i) ? at(i) : boundary; }
  bool operator==(const SpinWindow& o) const {
    return lo == o.lo && hi == o.hi && boundary == o.boundary && spins == o.spins;
  }
};

/** Window [lo, hi] filled with `fill`, boundary condition `boundary`. */
SpinWindow make_window(int lo, int hi, signed char fill = +1, signed char boundary = +1);

/** Throws std::invalid_argument unless every spin is +1/-1 and sizes agree. */
void validate(const SpinWindow& w);

/** Quenched disorder realisation h_i on [lo, hi]. */
struct DisorderField {
  int lo = 0;
  int hi = -1;
  std::vector<double> values;
  std::uint64_t seed = 0;
  DisorderKind kind = DisorderKind::bernoulli;

  int size() const { return hi - lo + 1; }
  double at(int i) const { return values[static_cast<size_t>(i - lo)]; }
  bool covers(int lo2, int hi2) const { return lo <= lo2 && hi2 <= hi; }
};

/** Deterministic disorder sample on [lo, hi].
 *  bernoulli: +1/-1 fair; gaussian: standard normal;
 *  uniform_subgaussian: X/a with X uniform on [-a, a] (values always in [-1, 1]). */
DisorderField sample_disorder(DisorderKind kind, int lo, int hi, std::uint64_t seed,
                              double subgaussian_a = 1.0);

/** Coupling J(n) and tail sums K(d) = sum_{n >= d} J(n) for
 *  J(1) = j1, J(n) = n^(alpha-2) for n >= 2.
 *
 *  Tails are truncated at an adaptive horizon with the integral bracket
 *  [I(H), I(H-1)], I(x) = x^(alpha-1)/(1-alpha), for the remainder
 *  sum_{n >= H} J(n); the midpoint is returned and the half-width is kept
 *  below tail_tolerance. Values K(1..cache_size) are cached at construction
 *  by backward recurrence K(d) = K(d+1) + J(d) with compensated summation.
 */
class CouplingTable {
 public:
  explicit CouplingTable(double alpha, double j1 = 10.0, double tail_tolerance = 1e-12,
                         int cache_size = 4096);

  double alpha() const { return alpha_; }
  double j1() const { return j1_; }
  double tail_tolerance() const { return tol_; }

  /** J(n); throws std::domain_error for n < 1. */
  double coupling(long long n) const;

  /** K(d); cached for d <= cache_size, recomputed otherwise. Throws for d < 1. */
  double tail(long long d) const;

  /** Rigorous bracket [lower, upper] containing the exact K(d). */
  std::pair<double, double> tail_bracket(long long d) const;

  /** Half-width of the truncation bracket actually achieved (<= tail_tolerance). */
  double tail_halfwidth() const { return halfwidth_; }

 private:
  double power_tail_mid(long long d, double& halfwidth) const;  // sum_{n>=d} n^(alpha-2), d >= 2
  double alpha_, j1_, tol_;
  long long horizon_;
  double halfwidth_ = 0.0;
  std::vector<double> k_;  // k_[d-1] = K(d)
  std::vector<double> j_;  // j_[n-1] = J(n), cached alongside
};

/** Interaction energy inside the window:
 *  sum over unordered pairs {i,j} in the window of J(|i-j|) (1 - s_i s_j). */
double bulk_energy(const SpinWindow& w, const CouplingTable& t);

/** External field energy: -theta * sum_i h_i s_i. */
double field_energy(const SpinWindow& w, const DisorderField& h, double theta);

/** Interaction with the constant boundary outside the window:
 *  sum_i (1 - s_i eta) [K(i - lo + 1) + K(hi - i + 1)]. */
double boundary_energy(const SpinWindow& w, const CouplingTable& t);

/** bulk + boundary + field. `t` must be built with params' alpha and j1. */
double total_energy(const SpinWindow& w, const DisorderField& h, const ModelParams& p,
                    const CouplingTable& t);

/** Energy change caused by flipping the spin at site i (O(|window|)). */
double flip_delta(const SpinWindow& w, const DisorderField& h, const ModelParams& p,
                  const CouplingTable& t, int i);

/** Local field F_i with flip_delta = 2 s_i F_i:
 *  F_i = sum_{j != i} J(|i-j|) s_j + eta [K(i-lo+1) + K(hi-i+1)] + theta h_i. */
double local_field(const SpinWindow& w, const DisorderField& h, const ModelParams& p,
                   const CouplingTable& t, int i);

}  // namespace rfim
