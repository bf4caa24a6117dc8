#include "rfim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfim/geometry.hpp"  // zeta()

namespace rfim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
// exp() overflows just above 709; stay clearly below when materializing counts.
constexpr double kExpCap = 700.0;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

// Ceil a quantity known only through its natural log.  Returns +inf when the
// value does not fit a double; never round-trips a finite linear value through
// exp(log(x)) (which could cross an integer boundary).
double ceil_from_log(double log_raw, double* log_out) {
  if (!(log_raw <= kExpCap)) {  // +inf or NaN or too large
    *log_out = log_raw;
    return std::exp(log_raw);  // +inf, or NaN passthrough
  }
  double v = std::ceil(std::exp(log_raw));
  if (v < 1.0) v = 1.0;
  *log_out = std::log(v);
  return v;
}

double ceil_linear(double raw, double* log_out) {
  if (!std::isfinite(raw)) {
    *log_out = raw > 0 ? kInf : nan_value();
    return raw;
  }
  double v = std::ceil(raw);
  if (v < 1.0) v = 1.0;
  *log_out = std::log(v);
  return v;
}

void push_check(std::vector<PlanCheck>* checks, const std::string& name, bool pass, double lhs,
                double rhs, bool gating) {
  checks->push_back(PlanCheck{name, pass, lhs, rhs, gating});
}

bool all_gating_pass(const std::vector<PlanCheck>& checks) {
  for (const auto& c : checks)
    if (c.gating && !c.pass) return false;
  return true;
}

std::string regime_name(double alpha) {
  if (alpha == 0.0) return "zero";
  if (alpha == 0.5) return "half";
  return "mid";
}

void check_common_inputs(double alpha, double theta, double beta) {
  if (!(alpha >= 0.0 && alpha <= 0.5))
    throw std::domain_error("alpha must lie in [0, 1/2] for the run-length calculators");
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
}

}  // namespace

double e_alpha(double alpha, double j1, double d) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("e_alpha: alpha must lie in [0, 1)");
  if (!(d >= 1.0)) throw std::invalid_argument("e_alpha: block size must be at least 1");
  if (alpha == 0.0) return 2.0 * (j1 - 1.0) + 2.0 * std::log(d) + 4.0;
  return 2.0 * (j1 - 1.0) + 2.0 * std::pow(d, alpha) / (alpha * (1.0 - alpha));
}

double lecam_bound(long long n, double tau, double censored_moment) {
  if (n < 1) throw std::invalid_argument("lecam_bound: n must be at least 1");
  if (!(tau > 0.0)) throw std::invalid_argument("lecam_bound: tau must be positive");
  if (!(censored_moment > 0.0 && censored_moment <= 1.0))
    throw std::domain_error("lecam_bound: censored moment must lie in (0, 1]");
  return 2.0 * std::sqrt(kPi) / std::sqrt(static_cast<double>(n) * censored_moment);
}

double lecam_gaussian_refinement(long long n, double tau) {
  if (n < 1) throw std::invalid_argument("lecam_gaussian_refinement: n must be at least 1");
  if (!(tau > 0.0)) throw std::invalid_argument("lecam_gaussian_refinement: tau must be positive");
  return tau / std::sqrt(2.0 * kPi * static_cast<double>(n));
}

BerryEsseenLower berry_esseen_lower(double theta, double delta) {
  if (!(theta > 0.0)) throw std::invalid_argument("berry_esseen_lower: theta must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("berry_esseen_lower: delta must be positive");
  BerryEsseenLower r;
  r.theta = theta;
  r.delta = delta;
  const double x = 8.0 / theta;
  r.phi_term = 0.5 * std::erfc(x / std::sqrt(2.0));
  r.be_term = 7.5 / std::sqrt(delta);
  r.lower = r.phi_term - r.be_term;
  r.log_minorant = -0.5 * x * x - 0.5 * std::log(2.0 * kPi) - std::log1p(x);
  r.minorant = std::exp(r.log_minorant);
  // Mills-ratio tail bound: the normal upper-tail probability beyond x is at
  // least density(x) * x / (1 + x^2); certify positivity in the log domain so
  // underflow of phi_term cannot mask it.
  r.log_phi_lower = -0.5 * x * x - 0.5 * std::log(2.0 * kPi) + std::log(x / (1.0 + x * x));
  const double log_be = std::log(7.5) - 0.5 * std::log(delta);
  r.positive = r.log_phi_lower > log_be;
  return r;
}

UpperBoundPlan plan_upper(double alpha, double theta, double beta, double j1, double big_b,
                          const std::function<double(double)>& g1_of_theta) {
  check_common_inputs(alpha, theta, beta);
  if (!(j1 > 1.0)) throw std::invalid_argument("plan_upper: j1 must exceed 1");
  if (!(big_b > 0.0 && big_b < 1.0)) throw std::invalid_argument("plan_upper: B must lie in (0,1)");
  if (!g1_of_theta) throw std::invalid_argument("plan_upper: missing gauge function");

  UpperBoundPlan p;
  p.regime = regime_name(alpha);
  p.alpha = alpha;
  p.theta = theta;
  p.beta = beta;
  p.j1 = j1;
  p.big_b = big_b;
  p.g1 = g1_of_theta(theta);

  double log_m_raw = 0.0, log_two_n_raw = 0.0;
  if (p.regime == "half") {
    const double x = 8.0 / theta;  // 64/theta^2 = x^2, 32/theta^2 = x^2/2
    p.log_delta = std::log(512.0 * kPi) + 2.0 * std::log1p(x) + x * x;
    p.delta = std::exp(p.log_delta);
    log_m_raw = std::log(2.0) + 0.5 * std::log(2.0 * kPi) + std::log1p(x) + 0.5 * x * x + p.g1;
    p.m_blocks = ceil_from_log(log_m_raw, &p.log_m_blocks);
    log_two_n_raw = 0.5 * std::exp(p.g1);
    p.two_n_plus_1 = ceil_from_log(log_two_n_raw, &p.log_two_n_plus_1);
  } else {
    if (p.regime == "mid") {
      p.delta = std::pow(32.0 / (big_b * theta * alpha * (1.0 - alpha)), 2.0 / (1.0 - 2.0 * alpha));
    } else {
      const double root = 64.0 * std::sqrt(kPi) * std::log(1.0 / theta) / big_b;
      p.delta = root * root / (theta * theta);
    }
    p.log_delta = std::log(p.delta);
    const double m_raw = 2.0 * p.g1 / std::log(2.0 / (1.0 + big_b));
    p.m_blocks = ceil_linear(m_raw, &p.log_m_blocks);
    const double two_n_raw = std::exp(p.g1) * (1.0 + big_b) / 2.0;
    p.two_n_plus_1 = ceil_linear(two_n_raw, &p.log_two_n_plus_1);
  }

  p.energy = e_alpha(alpha, j1, p.delta);
  p.l_max = p.m_blocks * p.delta;
  p.log_l_max = p.log_m_blocks + p.log_delta;
  const double two_n = p.two_n_plus_1 - 1.0;
  p.diam_v = two_n * p.delta;
  p.log_diam_v =
      (std::isfinite(two_n) ? std::log(two_n) : p.log_two_n_plus_1) + p.log_delta;
  if (std::isfinite(p.energy)) {
    p.log_gibbs_bound = p.log_two_n_plus_1 - 2.0 * beta * p.energy;
    p.gibbs_bound = std::isfinite(p.two_n_plus_1)
                        ? p.two_n_plus_1 * std::exp(-2.0 * beta * p.energy)
                        : std::exp(p.log_gibbs_bound);
  } else {
    // The energy term always dominates the window count when it overflows.
    p.log_gibbs_bound = -kInf;
    p.gibbs_bound = 0.0;
  }
  p.prob_bound = 1.0 - 2.0 * std::exp(-p.g1);

  push_check(&p.checks, "g1_at_least_1", p.g1 >= 1.0, p.g1, 1.0, true);
  push_check(&p.checks, "block_size_at_least_1", p.log_delta >= 0.0, p.log_delta, 0.0, true);
  if (p.regime == "half") {
    const double x = 8.0 / theta;
    const double log_phi_lower =
        -0.5 * x * x - 0.5 * std::log(2.0 * kPi) + std::log(x / (1.0 + x * x));
    const double log_be = std::log(7.5) - 0.5 * p.log_delta;
    push_check(&p.checks, "undershoot_positive", log_phi_lower > log_be, log_phi_lower, log_be,
               true);
  } else {
    const double log_p1 = std::log(8.0 * std::sqrt(kPi)) + std::log(p.energy) - std::log(theta) -
                          0.5 * p.log_delta;
    const double log_b = std::log(big_b);
    push_check(&p.checks, "p1_proxy_le_big_b", log_p1 <= log_b, std::exp(log_p1), big_b, true);
    const double tau = 2.0 * p.energy / theta;
    push_check(&p.checks, "tau_at_least_1", tau >= 1.0, tau, 1.0, true);
  }
  const double log_two_n = std::isfinite(two_n) ? std::log(two_n) : p.log_two_n_plus_1;
  push_check(&p.checks, "m_le_2n", p.log_m_blocks <= log_two_n, p.log_m_blocks, log_two_n, false);
  const bool finite = std::isfinite(p.delta) && std::isfinite(p.m_blocks) &&
                      std::isfinite(p.two_n_plus_1) && std::isfinite(p.l_max) &&
                      std::isfinite(p.diam_v) && std::isfinite(p.energy) && p.gibbs_bound > 0.0;
  push_check(&p.checks, "entries_finite", finite, finite ? 1.0 : 0.0, 1.0, false);

  p.in_regime = all_gating_pass(p.checks);
  return p;
}

double b_bar(double beta, double theta, double alpha) {
  if (!(beta > 0.0)) throw std::invalid_argument("b_bar: beta must be positive");
  if (!(theta >= 0.0)) throw std::invalid_argument("b_bar: theta must be nonnegative");
  const double z = zeta(alpha);
  const double energy_branch = beta * z / 4.0;
  const double field_branch = z * z / (1024.0 * theta * theta);
  return std::min(energy_branch, field_branch);
}

LowerBoundPlan plan_lower(double alpha, double theta, double beta, double d_factor,
                          const std::function<double(double)>& g2_of_bbar) {
  check_common_inputs(alpha, theta, beta);
  if (!(d_factor >= 1.0)) throw std::invalid_argument("plan_lower: D must be at least 1");
  if (!g2_of_bbar) throw std::invalid_argument("plan_lower: missing gauge function");

  LowerBoundPlan p;
  p.regime = regime_name(alpha);
  p.alpha = alpha;
  p.theta = theta;
  p.beta = beta;
  p.d_factor = d_factor;
  p.bbar = b_bar(beta, theta, alpha);
  p.g2 = g2_of_bbar(p.bbar);

  const double d = d_factor;
  const double g2 = p.g2;
  const double decay = (4.0 * d - 1.0) * g2;
  double log_l_raw = nan_value(), log_v_raw = nan_value();
  if (p.regime == "mid") {
    const double om2a = 1.0 - 2.0 * alpha;
    const double shape = 4.0 + std::log(p.bbar) / om2a;
    log_l_raw = (std::log(p.bbar) - std::log(d * g2 * shape)) / om2a;
    log_v_raw = g2 + std::log(p.bbar) / om2a;
    p.log_measure_bound = std::log(5.0) + 2.0 * std::log(p.bbar) / om2a - decay;
    p.measure_bound = std::exp(p.log_measure_bound);
    p.prob_bound = 1.0 - p.measure_bound;
  } else if (p.regime == "zero") {
    const double q = p.bbar / (d * g2);
    log_l_raw = std::log(q * (4.0 + std::log(q)));
    log_v_raw = g2 + log_l_raw;
    p.log_measure_bound = std::log(5.0) + 2.0 * std::log(p.bbar / (8.0 * d * g2)) +
                          2.0 * std::log(4.0 + std::log(q)) - decay;
    p.measure_bound = std::exp(p.log_measure_bound);
    const double amp = p.bbar / g2;
    const double shape = 4.0 + std::log(p.bbar / (8.0 * g2));
    p.prob_bound = 1.0 - 5.0 * amp * amp * shape * shape * std::exp(-decay);
  } else {
    log_l_raw = p.bbar / (2.0 * d) - 4.0;
    log_v_raw = -std::log(20.0) + 0.5 * p.bbar * (1.0 - 1.0 / d) - 2.0 * g2;
    p.log_measure_bound = -g2;
    p.measure_bound = std::exp(-g2);
    p.prob_bound = 1.0 - p.measure_bound;
  }
  p.l_min_real = std::exp(log_l_raw);
  p.v_min_real = std::exp(log_v_raw);
  p.l_min = ceil_from_log(log_l_raw, &p.log_l_min);
  p.v_min = ceil_from_log(log_v_raw, &p.log_v_min);

  push_check(&p.checks, "g2_at_least_1", g2 >= 1.0, g2, 1.0, true);
  push_check(&p.checks, "bbar_positive", p.bbar > 0.0, p.bbar, 0.0, true);
  push_check(&p.checks, "defining_length_positive", std::isfinite(log_l_raw), log_l_raw, 0.0, true);

  // The block-length hypothesis, evaluated in the log domain at a given log L.
  const auto hypothesis = [&](double log_l) -> std::pair<double, double> {
    double lhs_log;
    if (p.regime == "mid")
      lhs_log = std::log(p.bbar) - (1.0 - 2.0 * alpha) * log_l - std::log(4.0 + log_l);
    else if (p.regime == "zero")
      lhs_log = std::log(p.bbar) + std::log(4.0 + log_l) - log_l;
    else
      lhs_log = std::log(p.bbar) - std::log(2.0 * (4.0 + log_l));
    const double rhs_log =
        p.regime == "half" ? std::log(d) : std::log(d * g2);
    return {lhs_log, rhs_log};
  };
  {
    auto [lhs, rhs] = hypothesis(log_l_raw);
    push_check(&p.checks, "length_hypothesis_at_defining_length", lhs >= rhs - 1e-9, lhs, rhs,
               true);
    auto [lhs_r, rhs_r] = hypothesis(std::isfinite(p.l_min) ? std::log(p.l_min) : log_l_raw);
    push_check(&p.checks, "length_hypothesis_at_rounded_length", lhs_r >= rhs_r - 1e-9, lhs_r,
               rhs_r, false);
  }
  const bool finite = std::isfinite(p.l_min) && std::isfinite(p.v_min) &&
                      std::isfinite(p.measure_bound) && std::isfinite(p.prob_bound);
  push_check(&p.checks, "entries_finite", finite, finite ? 1.0 : 0.0, 1.0, false);

  p.in_regime = all_gating_pass(p.checks);
  return p;
}

double default_g(double alpha, double theta) {
  if (!(theta > 0.0)) return nan_value();
  const double l1 = std::log(1.0 / theta);
  if (!(l1 > 0.0)) return nan_value();
  if (alpha == 0.0) return std::log(l1 / theta);
  return l1 * std::log(l1);
}

TheoremSummary theorem_summary(double alpha, double theta, double beta, double j1, double big_b,
                               double d_factor) {
  check_common_inputs(alpha, theta, beta);
  TheoremSummary s;
  s.alpha = alpha;
  s.theta = theta;
  s.beta = beta;
  s.j1 = j1;
  s.big_b = big_b;
  s.d_factor = d_factor;
  s.g_value = default_g(alpha, theta);
  s.beta_floor = zeta(alpha) / (256.0 * theta * theta);
  s.beta_in_regime = beta >= s.beta_floor;

  s.upper = plan_upper(alpha, theta, beta, j1, big_b,
                       [alpha](double t) { return default_g(alpha, t); });
  const double g_value = s.g_value;
  s.lower = plan_lower(alpha, theta, beta, d_factor, [g_value](double) { return g_value; });

  s.bracket_ok = s.lower.log_l_min <= s.upper.log_l_max;
  if (alpha == 0.5) {
    s.has_exponent_pair = true;
    s.c_small = theta * theta * s.lower.log_l_min;
    s.c_large = theta * theta * s.upper.log_l_max;
  }

  if (!s.beta_in_regime) s.failed_checks.push_back("beta_at_least_floor");
  for (const auto& c : s.upper.checks)
    if (c.gating && !c.pass) s.failed_checks.push_back("upper:" + c.name);
  for (const auto& c : s.lower.checks)
    if (c.gating && !c.pass) s.failed_checks.push_back("lower:" + c.name);
  s.in_regime = s.beta_in_regime && s.upper.in_regime && s.lower.in_regime;
  return s;
}

namespace {
[[noreturn]] void throw_out_of_regime(const std::string& kind,
                                      const std::vector<PlanCheck>& checks) {
  std::string msg = kind + " plan out of regime; failed checks:";
  for (const auto& c : checks)
    if (c.gating && !c.pass) msg += " " + c.name;
  throw std::runtime_error(msg);
}
}  // namespace

void require_in_regime(const UpperBoundPlan& p) {
  if (!p.in_regime) throw_out_of_regime("upper-bound", p.checks);
}

void require_in_regime(const LowerBoundPlan& p) {
  if (!p.in_regime) throw_out_of_regime("lower-bound", p.checks);
}

}  // namespace rfim
