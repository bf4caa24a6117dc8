#pragma once
#include <functional>
#include <string>
#include <vector>

namespace rfim {

/** One named consistency check carried by a plan. Failing gating checks put
 *  the plan out of regime; non-gating checks are informational. */
struct PlanCheck {
  std::string name;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool gating = true;
};

/** Erasure-energy floor per block size:
 *  2(j1-1) + 2 d^alpha / (alpha (1-alpha)) for alpha in (0,1),
 *  2(j1-1) + 2 log d + 4 for alpha = 0. Requires d >= 1. */
double e_alpha(double alpha, double j1, double d);

/** Concentration bound 2 sqrt(pi) / sqrt(n * censored_moment) for the
 *  supremum over length-tau intervals of the law of sum of n fields;
 *  censored_moment = E[min(1, (h/tau)^2)] must lie in (0, 1]. */
double lecam_bound(long long n, double tau, double censored_moment);

/** Sharper Gaussian-limit version: tau / sqrt(2 pi n). */
double lecam_gaussian_refinement(long long n, double tau);

struct BerryEsseenLower {
  double theta = 0.0;
  double delta = 0.0;
  double phi_term = 0.0;      // Phi(-8/theta)
  double be_term = 0.0;       // 7.5 / sqrt(delta)
  double lower = 0.0;         // phi_term - be_term
  double minorant = 0.0;      // (1/sqrt(2 pi)) e^{-32/theta^2} / (1 + 8/theta)
  double log_minorant = 0.0;
  double log_phi_lower = 0.0; // rigorous lower bound for log Phi(-8/theta)
  bool positive = false;      // certified in log domain: Phi(-8/theta) > be_term
};

/** Lower bound Phi(-8/theta) - 7.5/sqrt(delta) for the probability that a
 *  block's field sum undershoots, with the analytic minorant of the normal
 *  tail for cross-checking; positivity is certified via the Mills-ratio
 *  lower bound so it survives underflow at small theta. */
BerryEsseenLower berry_esseen_lower(double theta, double delta);

struct UpperBoundPlan {
  std::string regime;  // "zero", "mid", "half"
  double alpha = 0.0, theta = 0.0, beta = 0.0, j1 = 0.0, big_b = 0.0, g1 = 0.0;
  double delta = 0.0;         // block size
  double m_blocks = 0.0;      // M: number of blocks the long run must cover
  double two_n_plus_1 = 0.0;  // number of blocks in the verification window
  double energy = 0.0;        // E_alpha(delta)
  double l_max = 0.0;         // M * delta
  double diam_v = 0.0;        // 2N * delta
  double gibbs_bound = 0.0;   // (2N+1) e^{-2 beta E_alpha(delta)}
  double prob_bound = 0.0;    // 1 - 2 e^{-g1}
  // log-domain twins (authoritative when the linear fields over/underflow)
  double log_delta = 0.0, log_m_blocks = 0.0, log_two_n_plus_1 = 0.0;
  double log_l_max = 0.0, log_diam_v = 0.0, log_gibbs_bound = 0.0;
  std::vector<PlanCheck> checks;
  bool in_regime = false;  // all gating checks pass
};

/** Build the long-run exclusion plan. g1_of_theta is evaluated at theta. */
UpperBoundPlan plan_upper(double alpha, double theta, double beta, double j1, double big_b,
                          const std::function<double(double)>& g1_of_theta);

/** min(beta zeta(alpha) / 4, zeta(alpha)^2 / (2^10 theta^2)). */
double b_bar(double beta, double theta, double alpha);

struct LowerBoundPlan {
  std::string regime;
  double alpha = 0.0, theta = 0.0, beta = 0.0, d_factor = 0.0;
  double bbar = 0.0, g2 = 0.0;         // g2 evaluated at bbar
  double l_min_real = 0.0;             // defining real-valued block length
  double l_min = 0.0;                  // ceil(l_min_real), at least 1
  double v_min_real = 0.0;
  double v_min = 0.0;                  // ceil(v_min_real), at least 1
  double measure_bound = 0.0;
  double prob_bound = 0.0;
  double log_l_min = 0.0, log_v_min = 0.0, log_measure_bound = 0.0;
  std::vector<PlanCheck> checks;
  bool in_regime = false;
};

/** Build the long-run existence plan. g2_of_bbar is evaluated at b_bar. */
LowerBoundPlan plan_lower(double alpha, double theta, double beta, double d_factor,
                          const std::function<double(double)>& g2_of_bbar);

/** Default gauge: log(1/theta) * log log(1/theta) for alpha in (0, 1/2],
 *  log(log(1/theta)/theta) for alpha = 0. NaN when undefined (theta too big). */
double default_g(double alpha, double theta);

struct TheoremSummary {
  double alpha = 0.0, theta = 0.0, beta = 0.0, j1 = 0.0, big_b = 0.0, d_factor = 0.0;
  double g_value = 0.0;        // default gauge used for both plans
  double beta_floor = 0.0;     // zeta / (2^8 theta^2)
  bool beta_in_regime = false; // beta >= beta_floor
  UpperBoundPlan upper;
  LowerBoundPlan lower;
  bool bracket_ok = false;     // log l_min <= log l_max
  bool has_exponent_pair = false;  // alpha == 1/2 only
  double c_small = 0.0, c_large = 0.0;  // theta^2 log L_min / log L_max
  bool in_regime = false;
  std::vector<std::string> failed_checks;
};

/** Compose both plans with the default gauges and defaults B=1/2, D=2. */
TheoremSummary theorem_summary(double alpha, double theta, double beta, double j1 = 10.0,
                               double big_b = 0.5, double d_factor = 2.0);

/** Throws std::runtime_error naming the failed gating checks unless the plan
 *  is in regime. */
void require_in_regime(const UpperBoundPlan& p);
void require_in_regime(const LowerBoundPlan& p);

}  // namespace rfim
