#include "rfim/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>

#include "rfim/binomial.hpp"
#include "rfim/kahan.hpp"
#include "rfim/bounds.hpp"
#include "rfim/chain.hpp"
#include "rfim/core.hpp"
#include "rfim/events.hpp"
#include "rfim/exact.hpp"
#include "rfim/geometry.hpp"
#include "rfim/io.hpp"
#include "rfim/rng.hpp"
#include "rfim/scaling.hpp"

namespace rfim {

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

constexpr std::uint64_t kAgreementSeed = 0xACCE5501ULL;
constexpr std::uint64_t kGeometrySeed = 0xACCE5503ULL;
constexpr std::uint64_t kContourSeed = 0xACCE5504ULL;

const CouplingTable& shared_table(double alpha) {
  static const CouplingTable t0(0.0, 10.0);
  static const CouplingTable t25(0.25, 10.0);
  static const CouplingTable t50(0.5, 10.0);
  if (alpha == 0.0) return t0;
  if (alpha == 0.25) return t25;
  if (alpha == 0.5) return t50;
  throw std::logic_error("shared_table: unexpected alpha");
}

SpinWindow random_window(int lo, int hi, Rng* rng, double minus_density = 0.5) {
  SpinWindow w = make_window(lo, hi);
  for (int i = lo; i <= hi; ++i)
    w.set(i, rng->uniform01() < minus_density ? -1 : +1);
  return w;
}

// --- C1: sampled event probabilities agree with exact enumeration ----------

Verdict c1_agreement(const std::string& dir, std::string* digest_out) {
  constexpr int kInstances = 50;
  constexpr int kLo = -5, kHi = 4;
  const double alphas[3] = {0.0, 0.25, 0.5};
  const DisorderKind kinds[3] = {DisorderKind::bernoulli, DisorderKind::gaussian,
                                 DisorderKind::uniform_subgaussian};
  const char* events[3] = {"spin_at:0:+", "run_equals:-1..1:+", "well:-1..1:-"};

  std::string digest = csv_preamble(
      {{"tool", "rfim acceptance"},
       {"version", kToolVersion},
       {"master_seed", strprintf("%llu", static_cast<unsigned long long>(kAgreementSeed))}},
      "instance,alpha,theta,beta,disorder,event,exact,estimate,std_error,tolerance,z");

  const SpinWindow shape = make_window(kLo, kHi);
  bool pass = true;
  double max_z = 0.0;
  int checked = 0;
  for (int i = 0; i < kInstances; ++i) {
    const double alpha = alphas[i % 3];
    const DisorderKind kind = kinds[(i / 3) % 3];
    Rng pick(derive_seed(kAgreementSeed, 4, static_cast<std::uint64_t>(i)));
    const double theta = 0.1 + 0.4 * pick.uniform01();
    const double beta = 0.5 + 1.5 * pick.uniform01();
    ModelParams params;
    params.alpha = alpha;
    params.beta = beta;
    params.theta = theta;
    params.disorder_kind = kind;
    const CouplingTable& table = shared_table(alpha);
    const DisorderField h =
        sample_disorder(kind, kLo, kHi, derive_seed(kAgreementSeed, 1, static_cast<std::uint64_t>(i)));

    for (int e = 0; e < 3; ++e) {
      const EventSpec ev = parse_event(events[e]);
      const double exact = event_probability(shape, h, params, table, ev);
      ChainConfig cc;
      cc.sweeps = 4200;
      cc.burn_in = 1000;
      cc.thinning = 2;
      cc.update_rule = UpdateRule::heat_bath;
      cc.seed = derive_seed(kAgreementSeed, 2, static_cast<std::uint64_t>(i * 4 + e));
      const EventEstimate est = estimate_event(shape, h, params, table, ev, cc);
      const double n = static_cast<double>(est.samples);
      const double p_shrunk = (est.mean * n + 1.0) / (n + 2.0);
      const double floor_se = std::sqrt(p_shrunk * (1.0 - p_shrunk) / n);
      const double scale = std::max(est.std_error, floor_se);
      const double tol = 4.0 * scale;
      const double z = std::fabs(est.mean - exact) / scale;
      max_z = std::max(max_z, z);
      ++checked;
      if (std::fabs(est.mean - exact) > tol) pass = false;
      digest += strprintf("%d,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s\n", i, fmt_double(alpha).c_str(),
                          fmt_double(theta).c_str(), fmt_double(beta).c_str(),
                          to_string(kind).c_str(), events[e], fmt_double(exact).c_str(),
                          fmt_double(est.mean).c_str(), fmt_double(est.std_error).c_str(),
                          fmt_double(tol).c_str(), fmt_double(z).c_str());
    }
  }
  write_file(dir + "/c1_agreement.csv", digest);
  *digest_out = digest;
  return {pass, strprintf("%d event probabilities vs enumeration, |diff| <= 4*max(batch SE, "
                          "binomial floor); max z = %.2f",
                          checked, max_z)};
}

// --- C2: triangle geometry round-trips every 16-site configuration ---------

Verdict c2_roundtrip() {
  constexpr int kLo = -8, kHi = 7, kSites = 16;
  bool pass = true;
  long long families = 0, triangles = 0;
  for (unsigned mask = 0; mask < (1u << kSites); ++mask) {
    SpinWindow w = make_window(kLo, kHi);
    for (int b = 0; b < kSites; ++b)
      w.set(kLo + b, (mask >> b) & 1u ? +1 : -1);
    const TriangleFamily f = triangles_from_spins(w);
    ++families;
    triangles += static_cast<long long>(f.triangles.size());
    if (!(spins_from_triangles(f) == w) || !compatible(f)) {
      pass = false;
      break;
    }
  }
  return {pass, strprintf("all %lld spin configurations on 16 sites rebuilt exactly from their "
                          "triangle families (%lld triangles), all families compatible",
                          families, triangles)};
}

// --- C3: erasure-cost floors on random configurations -----------------------

Verdict c3_peierls() {
  constexpr int kReps = 10000;
  constexpr int kLo = -12, kHi = 11;
  const double alphas[3] = {0.0, 0.25, 0.5};
  bool pass = true;
  double min_margin = std::numeric_limits<double>::infinity();
  long long checked = 0;
  for (int a = 0; a < 3; ++a) {
    const CouplingTable& table = shared_table(alphas[a]);
    Rng rng(derive_seed(kGeometrySeed, 30, static_cast<std::uint64_t>(a)));
    for (int r = 0; r < kReps; ++r) {
      const SpinWindow w = random_window(kLo, kHi, &rng);
      const TriangleFamily f = triangles_from_spins(w);
      const PeierlsReport rep = peierls_check(f, table, alphas[a]);
      if (!f.triangles.empty()) min_margin = std::min(min_margin, rep.min_margin);
      if (!rep.pass) pass = false;
      ++checked;
    }
  }
  return {pass, strprintf("%lld random 24-site families per coupling exponent, every sequential "
                          "and whole-contour erasure margin >= -1e-9; min margin = %.6g",
                          checked, min_margin)};
}

// --- C4: contour partition audit on random families --------------------------

Verdict c4_contours() {
  constexpr int kReps = 1000;
  constexpr int kLo = -20, kHi = 19;
  const double densities[3] = {0.1, 0.3, 0.5};
  bool pass = true;
  long long nonempty = 0;
  std::string first_fail;
  Rng rng(derive_seed(kContourSeed, 40, 0));
  for (int r = 0; r < kReps; ++r) {
    const SpinWindow w = random_window(kLo, kHi, &rng, densities[r % 3]);
    const TriangleFamily f = triangles_from_spins(w);
    if (!f.triangles.empty()) ++nonempty;
    const ContourReport rep = verify_contours(f);
    if (!rep.ok()) {
      pass = false;
      if (first_fail.empty()) first_fail = rep.detail;
    }
  }
  std::string detail = strprintf(
      "%d random 40-site families (%lld non-empty): member conservation, pairwise separation, "
      "idempotence, order independence, far-translation independence all hold",
      kReps, nonempty);
  if (!first_fail.empty()) detail += "; first failure: " + first_fail;
  return {pass, detail};
}

// --- C5: the separation constant ---------------------------------------------

Verdict c5_separation() {
  const int c = min_separation_constant();
  const auto [mid2, hw2] = separation_series(2);
  const auto [mid3, hw3] = separation_series(3);
  // Closed form: sum 4m/(Cm)^3 = (4/C^3) * sum 1/m^2 = (4/C^3) * pi^2/6.
  const double pi = 3.14159265358979323846;
  const double exact2 = 4.0 / 8.0 * pi * pi / 6.0;
  const double exact3 = 4.0 / 27.0 * pi * pi / 6.0;
  const bool pass = c == 3 && std::fabs(mid2 - exact2) <= 1e-9 && mid2 - hw2 > 0.5 &&
                    std::fabs(mid3 - exact3) <= 1e-9 && mid3 + hw3 <= 0.5;
  return {pass, strprintf("smallest admissible constant = %d; series(2) = %.16g > 1/2, "
                          "series(3) = %.16g <= 1/2, both within 1e-9 of the closed form",
                          c, mid2, mid3)};
}

// --- C6: exterior coupling dominated by the erasure-energy floor -------------

Verdict c6_dominance() {
  const double alphas[3] = {0.0, 0.25, 0.5};
  bool pass = true;
  double min_margin = std::numeric_limits<double>::infinity();
  for (double alpha : alphas) {
    const CouplingTable& table = shared_table(alpha);
    Kahan tail_sum;
    for (int d = 1; d <= 512; ++d) {
      tail_sum.add(table.tail(d));
      const double exterior = 2.0 * tail_sum.value();  // sum over the block of both-side tails
      const double floor = e_alpha(alpha, 10.0, d);
      min_margin = std::min(min_margin, floor - exterior);
      if (exterior > floor) pass = false;
    }
  }
  return {pass, strprintf("two-sided exterior coupling of blocks up to 512 sites stays below the "
                          "erasure floor for all three exponents; min slack = %.6g",
                          min_margin)};
}

// --- C7: concentration bounds dominate exact reference distributions ---------

Verdict c7_oracles() {
  bool pass = true;
  int points = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (long long n : {100LL, 400LL, 900LL, 2500LL}) {
    for (double tau : {1.0, 2.0, 4.0}) {
      const double moment = std::min(1.0, 1.0 / (tau * tau));  // E[min(1,(h/tau)^2)], h = +-1
      const double bound = lecam_bound(n, tau, moment);
      const double exact = binomial_sup_interval(n, tau);
      min_slack = std::min(min_slack, bound - exact);
      if (exact > bound) pass = false;
      const double refined = lecam_gaussian_refinement(n, tau);
      const double gauss = gaussian_sup_interval(n, tau);
      min_slack = std::min(min_slack, refined - gauss);
      if (gauss > refined) pass = false;
      points += 2;
    }
  }
  for (double theta : {4.0, 8.0}) {
    for (long long n : {400LL, 2500LL, 10000LL}) {
      const BerryEsseenLower r = berry_esseen_lower(theta, static_cast<double>(n));
      const double exact =
          binomial_cdf_le(n, -(8.0 / theta) * std::sqrt(static_cast<double>(n)));
      min_slack = std::min(min_slack, exact - r.lower);
      if (r.lower > exact) pass = false;
      ++points;
    }
  }
  return {pass, strprintf("%d grid points: interval bounds >= exact sign-sum suprema, normal "
                          "refinement >= exact normal mass, undershoot lower bounds <= exact "
                          "tail; min slack = %.6g",
                          points, min_slack)};
}

// --- C8: origin contour entropy ----------------------------------------------

Verdict c8_entropy(const std::string& dir) {
  const long long golden[3] = {1, 9, 41};
  bool pass = true;
  std::string csv = csv_preamble({{"tool", "rfim acceptance"}, {"version", kToolVersion}},
                                 "m,b,alpha,families,shapes,sum,bound");
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 3; ++m) {
    for (double b : {5.0, 10.0}) {
      for (double alpha : {0.0, 0.5}) {
        const EntropySum e = entropy_sum(m, b, alpha);
        if (e.family_count != golden[m - 1]) pass = false;
        if (!(e.sum <= e.bound)) pass = false;
        min_ratio = std::min(min_ratio, e.bound / e.sum);
        csv += strprintf("%d,%s,%s,%lld,%lld,%s,%s\n", m, fmt_double(b).c_str(),
                         fmt_double(alpha).c_str(), e.family_count, e.shape_count,
                         fmt_double(e.sum).c_str(), fmt_double(e.bound).c_str());
      }
    }
  }
  write_file(dir + "/c8_entropy.csv", csv);
  return {pass, strprintf("origin-anchored contour counts match the enumerated values (1, 9, 41 "
                          "for masses 1..3) and every weighted sum stays below 2m e^{-b phi(m)}; "
                          "min bound/sum = %.3f",
                          min_ratio)};
}

// --- C9: both plan calculators hold across the small-field grid --------------

Verdict c9_grid(const std::string& dir) {
  const double alphas[5] = {0.0, 0.125, 0.25, 0.375, 0.5};
  const double theta_zero[4] = {1e-7, 3e-8, 1e-8, 1e-9};
  const double theta_mid[4] = {1e-4, 1e-5, 1e-6, 1e-7};
  const double theta_half[4] = {0.13, 0.1, 0.05, 0.01};
  const double mults[5] = {1.0, 3.0, 10.0, 30.0, 100.0};

  std::string csv = csv_preamble(
      {{"tool", "rfim acceptance"}, {"version", kToolVersion}},
      "alpha,theta,beta_mult,beta,in_regime,bracket_ok,log_L_min,log_L_max,branch_gap");
  bool pass = true;
  int points = 0, in_regime = 0;
  for (double alpha : alphas) {
    const double* thetas = alpha == 0.0 ? theta_zero : (alpha == 0.5 ? theta_half : theta_mid);
    for (int t = 0; t < 4; ++t) {
      const double theta = thetas[t];
      const double saturation = zeta(alpha) / (256.0 * theta * theta);
      for (double mult : mults) {
        const double beta = mult * saturation;
        const TheoremSummary s = theorem_summary(alpha, theta, beta);
        ++points;
        if (s.in_regime) ++in_regime;
        if (!s.in_regime || !s.bracket_ok) pass = false;
        double branch_gap = 0.0;
        if (mult == 1.0) {
          // At saturation the two b_bar branches coincide.
          const double z = zeta(alpha);
          const double eb = beta * z / 4.0;
          const double fb = z * z / (1024.0 * theta * theta);
          branch_gap = std::fabs(eb - fb) / fb;
          if (!(branch_gap <= 1e-12)) pass = false;
        }
        csv += strprintf("%s,%s,%s,%s,%d,%d,%s,%s,%s\n", fmt_double(alpha).c_str(),
                         fmt_double(theta).c_str(), fmt_double(mult).c_str(),
                         fmt_double(beta).c_str(), s.in_regime ? 1 : 0, s.bracket_ok ? 1 : 0,
                         fmt_double(s.lower.log_l_min).c_str(),
                         fmt_double(s.upper.log_l_max).c_str(), fmt_double(branch_gap).c_str());
      }
    }
  }
  write_file(dir + "/c9_grid.csv", csv);
  return {pass, strprintf("%d grid points (5 exponents x 4 field strengths x 5 couplings): all "
                          "gating checks pass, L_min <= L_max throughout, b_bar branches agree "
                          "to 1e-12 at saturation (%d/%d in regime)",
                          points, in_regime, points)};
}

// --- C10: run lengths grow as the field weakens -------------------------------

Verdict c10_scaling(const std::string& dir, ScalingResult* result_out) {
  ScalingConfig cfg;  // defaults pin the experiment
  *result_out = run_scaling(cfg);
  write_scaling(*result_out, dir + "/scaling");
  bool pass = true;
  std::string detail = "pooled median origin-run lengths";
  const auto& cells = result_out->cells;
  for (size_t i = 0; i < cells.size(); ++i) {
    detail += strprintf(" | theta=%s: %.1f [%.1f, %.1f]", fmt_double(cells[i].theta).c_str(),
                        cells[i].median, cells[i].ci_lo, cells[i].ci_hi);
    if (i > 0 && !(cells[i].median > cells[i - 1].median)) pass = false;
  }
  detail += " (strictly increasing as theta decreases)";
  return {pass, detail};
}

// --- C11: byte-level determinism ----------------------------------------------

Verdict c11_determinism(const std::string& dir, const std::string& c1_digest,
                        const ScalingResult& scaling) {
  std::string digest2;
  std::filesystem::create_directories(dir + "/rerun");
  const Verdict again = c1_agreement(dir + "/rerun", &digest2);
  (void)again;
  const ScalingResult scaling2 = run_scaling(scaling.config);
  write_scaling(scaling2, dir + "/rerun/scaling");
  const bool digest_same = digest2 == c1_digest;
  const bool runs_same = scaling2.runlengths_csv == scaling.runlengths_csv;
  const bool summary_same = scaling2.summary_csv == scaling.summary_csv;
  const bool pass = digest_same && runs_same && summary_same;
  return {pass, strprintf("independent reruns byte-identical: estimate table %s (%zu bytes), "
                          "run-length table %s (%zu bytes), summary %s (%zu bytes)",
                          digest_same ? "yes" : "NO", c1_digest.size(),
                          runs_same ? "yes" : "NO", scaling.runlengths_csv.size(),
                          summary_same ? "yes" : "NO", scaling.summary_csv.size())};
}

CriterionResult run_timed(const std::string& id, const std::string& name,
                          const std::function<Verdict()>& fn) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Verdict v = fn();
    r.pass = v.pass;
    r.detail = std::move(v.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const std::string& artifact_dir,
    const std::function<void(const CriterionResult&)>& on_result) {
  std::filesystem::create_directories(artifact_dir);
  std::vector<CriterionResult> out;
  std::string c1_digest;
  ScalingResult scaling;

  const auto record = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  record(run_timed("C1", "sampled event probabilities match exact enumeration",
                   [&] { return c1_agreement(artifact_dir, &c1_digest); }));
  record(run_timed("C2", "triangle families rebuild every 16-site configuration",
                   [] { return c2_roundtrip(); }));
  record(run_timed("C3", "erasure-cost floors hold on random configurations",
                   [] { return c3_peierls(); }));
  record(run_timed("C4", "contour partition audit on random families",
                   [] { return c4_contours(); }));
  record(run_timed("C5", "smallest admissible separation constant is 3",
                   [] { return c5_separation(); }));
  record(run_timed("C6", "exterior coupling stays below the erasure floor",
                   [] { return c6_dominance(); }));
  record(run_timed("C7", "concentration bounds dominate exact reference laws",
                   [] { return c7_oracles(); }));
  record(run_timed("C8", "origin contour entropy matches enumeration and bound",
                   [&] { return c8_entropy(artifact_dir); }));
  record(run_timed("C9", "plan calculators valid across the small-field grid",
                   [&] { return c9_grid(artifact_dir); }));
  record(run_timed("C10", "typical run length grows as the field weakens",
                   [&] { return c10_scaling(artifact_dir, &scaling); }));
  record(run_timed("C11", "all stochastic pipelines are byte-deterministic",
                   [&] { return c11_determinism(artifact_dir, c1_digest, scaling); }));
  return out;
}

}  // namespace rfim
