#include "rfim/core.hpp"

#include <cmath>
#include <stdexcept>

#include "rfim/kahan.hpp"
#include "rfim/rng.hpp"

namespace rfim {

std::string to_string(DisorderKind k) {
  switch (k) {
    case DisorderKind::bernoulli: return "bernoulli";
    case DisorderKind::gaussian: return "gaussian";
    case DisorderKind::uniform_subgaussian: return "uniform_subgaussian";
  }
  return "unknown";
}

DisorderKind disorder_kind_from_string(const std::string& s) {
  if (s == "bernoulli") return DisorderKind::bernoulli;
  if (s == "gaussian") return DisorderKind::gaussian;
  if (s == "uniform_subgaussian") return DisorderKind::uniform_subgaussian;
  throw std::invalid_argument("unknown disorder kind: " + s);
}

void validate(const ModelParams& p) {
  if (!(p.alpha >= 0.0 && p.alpha < 1.0))
    throw std::domain_error("alpha must lie in [0, 1)");
  if (!(p.j1 > 1.0)) throw std::domain_error("j1 must exceed 1");
  if (!(p.beta > 0.0)) throw std::domain_error("beta must be positive");
  if (!(p.theta >= 0.0)) throw std::domain_error("theta must be nonnegative");
  if (!(p.subgaussian_a > 0.0)) throw std::domain_error("subgaussian scale must be positive");
}

SpinWindow make_window(int lo, int hi, signed char fill, signed char boundary) {
  if (hi < lo) throw std::invalid_argument("window must be nonempty");
  SpinWindow w;
  w.lo = lo;
  w.hi = hi;
  w.boundary = boundary;
  w.spins.assign(static_cast<size_t>(hi - lo + 1), fill);
  return w;
}

void validate(const SpinWindow& w) {
  if (w.hi < w.lo) throw std::invalid_argument("window must be nonempty");
  if (w.spins.size() != static_cast<size_t>(w.size()))
    throw std::invalid_argument("spin vector size does not match window");
  if (w.boundary != 1 && w.boundary != -1)
    throw std::invalid_argument("boundary condition must be +1 or -1");
  for (signed char s : w.spins)
    if (s != 1 && s != -1) throw std::invalid_argument("spins must be +1 or -1");
}

DisorderField sample_disorder(DisorderKind kind, int lo, int hi, std::uint64_t seed,
                              double subgaussian_a) {
  if (hi < lo) throw std::invalid_argument("disorder window must be nonempty");
  if (!(subgaussian_a > 0.0)) throw std::domain_error("subgaussian scale must be positive");
  DisorderField f;
  f.lo = lo;
  f.hi = hi;
  f.seed = seed;
  f.kind = kind;
  f.values.resize(static_cast<size_t>(hi - lo + 1));
  Rng rng(seed);
  for (double& v : f.values) {
    switch (kind) {
      case DisorderKind::bernoulli: v = rng.pm1(); break;
      case DisorderKind::gaussian: v = rng.gaussian(); break;
      case DisorderKind::uniform_subgaussian:
        // X uniform on [-a, a], normalised by a: always lands in [-1, 1]
        v = 2.0 * rng.uniform01() - 1.0;
        break;
    }
  }
  return f;
}

namespace {

double power_term(double alpha, long long n) {
  double d = static_cast<double>(n);
  if (alpha == 0.0) return 1.0 / (d * d);
  if (alpha == 0.5) return 1.0 / (d * std::sqrt(d));
  if (alpha == 0.25) return 1.0 / (d * std::sqrt(d) * std::sqrt(std::sqrt(d)));
  return std::pow(d, alpha - 2.0);
}

/** Integral of x^(alpha-2) from x to infinity. */
double power_integral(double alpha, double x) {
  return std::pow(x, alpha - 1.0) / (1.0 - alpha);
}

}  // namespace

CouplingTable::CouplingTable(double alpha, double j1, double tail_tolerance, int cache_size)
    : alpha_(alpha), j1_(j1), tol_(tail_tolerance) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in [0, 1)");
  if (!(j1 > 1.0)) throw std::domain_error("j1 must exceed 1");
  if (!(tail_tolerance > 0.0)) throw std::domain_error("tail tolerance must be positive");
  if (cache_size < 2) throw std::invalid_argument("cache size must be at least 2");

  // Horizon H with bracket half-width [I(H-1) - I(H)]/2 <= tol. The half-width
  // is about H^(alpha-2)/2, so start from the closed-form estimate and grow.
  double est = std::pow(1.0 / (2.0 * tail_tolerance), 1.0 / (2.0 - alpha));
  horizon_ = static_cast<long long>(std::ceil(est)) + 2;
  while ((power_integral(alpha_, double(horizon_ - 1)) - power_integral(alpha_, double(horizon_))) / 2.0 >
         tail_tolerance)
    horizon_ *= 2;

  j_.resize(static_cast<size_t>(cache_size));
  j_[0] = j1_;
  for (int n = 2; n <= cache_size; ++n) j_[static_cast<size_t>(n - 1)] = power_term(alpha_, n);

  // K(cache_size + 1) by direct truncated summation, then backward recurrence.
  double hw = 0.0;
  double k_top = power_tail_mid(cache_size + 1, hw);
  halfwidth_ = hw;
  k_.resize(static_cast<size_t>(cache_size));
  Kahan acc;
  acc.s = k_top;
  for (int d = cache_size; d >= 1; --d) {
    acc.add(d == 1 ? j1_ : power_term(alpha_, d));
    k_[static_cast<size_t>(d - 1)] = acc.value();
  }
}

double CouplingTable::power_tail_mid(long long d, double& halfwidth) const {
  // sum_{n=d}^{start-1} n^(alpha-2) + midpoint of [I(start), I(start-1)].
  // The bracket anchors at d itself when d lies beyond the horizon (the
  // bracket only narrows further out, so the tolerance still holds).
  const long long start = std::max(d, horizon_);
  Kahan acc;
  for (long long n = start - 1; n >= d; --n) acc.add(power_term(alpha_, n));
  double lo_rem = power_integral(alpha_, double(start));
  double hi_rem = power_integral(alpha_, double(start - 1));
  halfwidth = (hi_rem - lo_rem) / 2.0;
  return acc.value() + (lo_rem + hi_rem) / 2.0;
}

double CouplingTable::coupling(long long n) const {
  if (n < 1) throw std::domain_error("coupling distance must be >= 1");
  if (n == 1) return j1_;
  if (n <= static_cast<long long>(j_.size())) return j_[static_cast<size_t>(n - 1)];
  return power_term(alpha_, n);
}

double CouplingTable::tail(long long d) const {
  if (d < 1) throw std::domain_error("tail index must be >= 1");
  if (d <= static_cast<long long>(k_.size())) return k_[static_cast<size_t>(d - 1)];
  double hw = 0.0;
  return power_tail_mid(d, hw);
}

std::pair<double, double> CouplingTable::tail_bracket(long long d) const {
  if (d < 1) throw std::domain_error("tail index must be >= 1");
  const long long start = std::max(d, horizon_);  // see power_tail_mid
  Kahan acc;
  for (long long n = start - 1; n >= std::max(d, 2LL); --n) acc.add(power_term(alpha_, n));
  if (d == 1) acc.add(j1_);
  double lo_rem = power_integral(alpha_, double(start));
  double hi_rem = power_integral(alpha_, double(start - 1));
  return {acc.value() + lo_rem, acc.value() + hi_rem};
}

double bulk_energy(const SpinWindow& w, const CouplingTable& t) {
  Kahan acc;
  int n = w.size();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (w.spins[static_cast<size_t>(a)] != w.spins[static_cast<size_t>(b)])
        acc.add(2.0 * t.coupling(b - a));
    }
  }
  return acc.value();
}

double field_energy(const SpinWindow& w, const DisorderField& h, double theta) {
  if (theta == 0.0) return 0.0;
  if (!h.covers(w.lo, w.hi)) throw std::invalid_argument("disorder field does not cover window");
  Kahan acc;
  for (int i = w.lo; i <= w.hi; ++i) acc.add(h.at(i) * double(w.at(i)));
  return -theta * acc.value();
}

double boundary_energy(const SpinWindow& w, const CouplingTable& t) {
  Kahan acc;
  for (int i = w.lo; i <= w.hi; ++i) {
    if (w.at(i) != w.boundary)
      acc.add(2.0 * (t.tail(i - w.lo + 1) + t.tail(w.hi - i + 1)));
  }
  return acc.value();
}

double total_energy(const SpinWindow& w, const DisorderField& h, const ModelParams& p,
                    const CouplingTable& t) {
  if (t.alpha() != p.alpha || t.j1() != p.j1)
    throw std::invalid_argument("coupling table does not match model parameters");
  return bulk_energy(w, t) + boundary_energy(w, t) + field_energy(w, h, p.theta);
}

double local_field(const SpinWindow& w, const DisorderField& h, const ModelParams& p,
                   const CouplingTable& t, int i) {
  if (!w.contains(i)) throw std::domain_error("site outside window");
  Kahan acc;
  for (int j = w.lo; j <= w.hi; ++j) {
    if (j == i) continue;
    acc.add(t.coupling(std::abs(i - j)) * double(w.at(j)));
  }
  acc.add(double(w.boundary) * (t.tail(i - w.lo + 1) + t.tail(w.hi - i + 1)));
  if (p.theta != 0.0) {
    if (!h.covers(w.lo, w.hi)) throw std::invalid_argument("disorder field does not cover window");
    acc.add(p.theta * h.at(i));
  }
  return acc.value();
}

double flip_delta(const SpinWindow& w, const DisorderField& h, const ModelParams& p,
                  const CouplingTable& t, int i) {
  return 2.0 * double(w.at(i)) * local_field(w, h, p, t, i);
}

}  // namespace rfim
