#include "rfim/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfim/kahan.hpp"
#include "rfim/rng.hpp"

namespace rfim {

namespace {

/** Visit every configuration along a Gray-code walk (one spin flips per step)
 *  with the visitor receiving (configuration, energy). The energy is updated
 *  incrementally and recomputed from scratch every 2^16 steps. */
template <class Visit>
void enumerate_gibbs(const SpinWindow& shape, const DisorderField& h, const ModelParams& p,
                     const CouplingTable& t, Visit&& visit) {
  validate(p);
  int n = shape.size();
  if (n < 1) throw std::invalid_argument("window must be nonempty");
  if (n > kEnumerationSiteCap)
    throw std::invalid_argument("window too large for exact enumeration");
  SpinWindow w = shape;
  std::fill(w.spins.begin(), w.spins.end(), static_cast<signed char>(-1));
  double energy = total_energy(w, h, p, t);
  visit(const_cast<const SpinWindow&>(w), energy);
  std::uint64_t total = std::uint64_t(1) << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    // the Gray codes of k-1 and k differ exactly in bit ctz(k)
    int bit = __builtin_ctzll(k);
    int site = w.lo + bit;
    energy += flip_delta(w, h, p, t, site);
    w.set(site, static_cast<signed char>(-w.at(site)));
    if ((k & 0xFFFFULL) == 0) energy = total_energy(w, h, p, t);
    visit(const_cast<const SpinWindow&>(w), energy);
  }
}

/** Streaming log-sum-exp with a shared scaling maximum across several
 *  compensated accumulators (slot 0 is the total). */
struct SharedLse {
  double m = -std::numeric_limits<double>::infinity();
  Kahan total;
  Kahan part;

  void add(double lw, bool in_part) {
    if (lw > m) {
      double f = std::exp(m - lw);  // 0 on the first term
      total.scale(f);
      part.scale(f);
      m = lw;
    }
    double e = std::exp(lw - m);
    total.add(e);
    if (in_part) part.add(e);
  }
  double log_total() const {
    // fold the low-order part into the log for sub-epsilon accuracy
    return m + std::log(total.s) + total.c / total.s;
  }
  double fraction() const { return part.value() / total.value(); }
};

}  // namespace

double log_partition(const SpinWindow& shape, const DisorderField& h, const ModelParams& p,
                     const CouplingTable& t) {
  SharedLse lse;
  enumerate_gibbs(shape, h, p, t,
                  [&](const SpinWindow&, double e) { lse.add(-p.beta * e, false); });
  return lse.log_total();
}

double event_probability(const SpinWindow& shape, const DisorderField& h,
                         const ModelParams& p, const CouplingTable& t, const EventSpec& ev) {
  SharedLse lse;
  enumerate_gibbs(shape, h, p, t, [&](const SpinWindow& w, double e) {
    lse.add(-p.beta * e, evaluate_event(w, ev));
  });
  return lse.fraction();
}

std::vector<SpinWindow> exact_sample(const SpinWindow& shape, const DisorderField& h,
                                     const ModelParams& p, const CouplingTable& t,
                                     long long count, std::uint64_t seed) {
  int n = shape.size();
  if (n > kSamplingSiteCap)
    throw std::invalid_argument("window too large for exact sampling");
  if (count < 0) throw std::invalid_argument("sample count must be nonnegative");
  std::uint64_t total = std::uint64_t(1) << n;
  std::vector<double> logw(total);
  double m = -std::numeric_limits<double>::infinity();
  std::uint64_t k = 0;
  enumerate_gibbs(shape, h, p, t, [&](const SpinWindow&, double e) {
    logw[k++] = -p.beta * e;
    m = std::max(m, -p.beta * e);
  });
  // cumulative normalised weights in Gray-walk order
  std::vector<double> cum(total);
  double running = 0.0;
  for (std::uint64_t i = 0; i < total; ++i) {
    running += std::exp(logw[i] - m);
    cum[i] = running;
  }
  Rng rng(seed);
  std::vector<SpinWindow> out;
  out.reserve(static_cast<size_t>(count));
  for (long long s = 0; s < count; ++s) {
    double u = rng.uniform01() * running;
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    std::uint64_t idx = it == cum.end() ? total - 1
                                        : static_cast<std::uint64_t>(it - cum.begin());
    std::uint64_t gray = idx ^ (idx >> 1);  // configuration visited at step idx
    SpinWindow w = shape;
    for (int bminor = 0; bminor < n; ++bminor)
      w.spins[static_cast<size_t>(bminor)] =
          ((gray >> bminor) & 1ULL) ? static_cast<signed char>(+1)
                                    : static_cast<signed char>(-1);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace rfim
