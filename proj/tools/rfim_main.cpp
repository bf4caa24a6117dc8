#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rfim/bounds.hpp"
#include "rfim/chain.hpp"
#include "rfim/core.hpp"
#include "rfim/events.hpp"
#include "rfim/exact.hpp"
#include "rfim/geometry.hpp"
#include "rfim/io.hpp"
#include "rfim/scaling.hpp"

namespace {

using namespace rfim;

/** A verification ran and failed (distinct from a usage error). */
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SpinWindow window_from_text(const std::string& s, int lo, signed char boundary = +1) {
  if (s.empty()) throw std::invalid_argument("spin string must not be empty");
  SpinWindow w = make_window(lo, lo + static_cast<int>(s.size()) - 1, +1, boundary);
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+')
      w.set(lo + static_cast<int>(i), +1);
    else if (s[i] == '-')
      w.set(lo + static_cast<int>(i), -1);
    else
      throw std::invalid_argument("spin string may contain only '+' and '-'");
  }
  return w;
}

std::string text_from_window(const SpinWindow& w) {
  std::string s;
  for (int i = w.lo; i <= w.hi; ++i) s += w.at(i) > 0 ? '+' : '-';
  return s;
}

/** Shared model flags for the exact and mcmc subcommands. */
struct ModelFlags {
  int lo = -8;
  int hi = 7;
  double alpha = 0.0;
  double j1 = 10.0;
  double beta = 1.0;
  double theta = 0.0;
  std::string disorder = "bernoulli";
  std::uint64_t disorder_seed = 1;
  double subgaussian_a = 1.0;

  ModelParams params() const {
    ModelParams p;
    p.alpha = alpha;
    p.j1 = j1;
    p.beta = beta;
    p.theta = theta;
    p.disorder_kind = disorder_kind_from_string(disorder);
    p.subgaussian_a = subgaussian_a;
    return p;
  }
  DisorderField field() const {
    return sample_disorder(disorder_kind_from_string(disorder), lo, hi, disorder_seed,
                           subgaussian_a);
  }
  CouplingTable table() const { return CouplingTable(alpha, j1); }
  SpinWindow shape() const { return make_window(lo, hi); }
};

void add_model_flags(CLI::App* c, ModelFlags* m) {
  c->add_option("--lo", m->lo, "window lower end")->capture_default_str();
  c->add_option("--hi", m->hi, "window upper end")->capture_default_str();
  c->add_option("--alpha", m->alpha, "coupling exponent in [0,1)")->capture_default_str();
  c->add_option("--j1", m->j1, "nearest-neighbour coupling (> 1)")->capture_default_str();
  c->add_option("--beta", m->beta, "inverse temperature")->capture_default_str();
  c->add_option("--theta", m->theta, "field strength")->capture_default_str();
  c->add_option("--disorder", m->disorder, "bernoulli | gaussian | uniform_subgaussian")
      ->capture_default_str();
  c->add_option("--disorder-seed", m->disorder_seed, "disorder stream seed")
      ->capture_default_str();
  c->add_option("--subgaussian-a", m->subgaussian_a, "scale for uniform_subgaussian")
      ->capture_default_str();
}

struct ChainFlags {
  long long sweeps = 1000;
  long long burn_in = 100;
  long long thinning = 1;
  std::uint64_t seed = 1;
  std::string update = "heat_bath";
  std::string init = "all_boundary";

  ChainConfig config() const {
    ChainConfig c;
    c.sweeps = sweeps;
    c.burn_in = burn_in;
    c.thinning = thinning;
    c.seed = seed;
    c.update_rule = update_rule_from_string(update);
    c.initial = initial_state_from_string(init);
    return c;
  }
};

void add_chain_flags(CLI::App* c, ChainFlags* f) {
  c->add_option("--sweeps", f->sweeps, "total sweeps")->capture_default_str();
  c->add_option("--burn-in", f->burn_in, "sweeps discarded before sampling")
      ->capture_default_str();
  c->add_option("--thinning", f->thinning, "sweeps between samples")->capture_default_str();
  c->add_option("--chain-seed", f->seed, "chain stream seed")->capture_default_str();
  c->add_option("--update", f->update, "heat_bath | metropolis")->capture_default_str();
  c->add_option("--init", f->init, "all_boundary | random")->capture_default_str();
}

void print(const std::string& s) { std::fputs(s.c_str(), stdout); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-range random-field spin chains: exact and sampled finite-window Gibbs "
               "measures, run/triangle/contour geometry, and closed-form run-length plans"};
  app.require_subcommand(1);

  // ---- exact ---------------------------------------------------------------
  auto* exact = app.add_subcommand("exact", "exact enumeration of small windows");
  exact->require_subcommand(1);
  {
    auto m = std::make_shared<ModelFlags>();
    auto* c = exact->add_subcommand("logz", "log partition function");
    add_model_flags(c, m.get());
    c->callback([m] {
      const double v = log_partition(m->shape(), m->field(), m->params(), m->table());
      print(strprintf("{\n  \"log_partition\": %s\n}\n", fmt_double(v).c_str()));
    });
  }
  {
    auto m = std::make_shared<ModelFlags>();
    auto ev = std::make_shared<std::string>("spin_at:0:+");
    auto* c = exact->add_subcommand("probability", "exact probability of an event");
    add_model_flags(c, m.get());
    c->add_option("--event", *ev, "event spec, e.g. spin_at:0:+ or long_run:-5..5:4")
        ->capture_default_str();
    c->callback([m, ev] {
      const EventSpec spec = parse_event(*ev);
      const double v = event_probability(m->shape(), m->field(), m->params(), m->table(), spec);
      print(strprintf("{\n  \"event\": \"%s\",\n  \"probability\": %s\n}\n",
                      to_string(spec).c_str(), fmt_double(v).c_str()));
    });
  }
  {
    auto m = std::make_shared<ModelFlags>();
    auto count = std::make_shared<long long>(10);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto* c = exact->add_subcommand("sample", "independent exact samples (one +- line each)");
    add_model_flags(c, m.get());
    c->add_option("--count", *count, "number of samples")->capture_default_str();
    c->add_option("--sample-seed", *seed, "sampling stream seed")->capture_default_str();
    c->callback([m, count, seed] {
      for (const SpinWindow& w :
           exact_sample(m->shape(), m->field(), m->params(), m->table(), *count, *seed))
        print(text_from_window(w) + "\n");
    });
  }

  // ---- mcmc ----------------------------------------------------------------
  auto* mcmc = app.add_subcommand("mcmc", "single-site Markov chain sampling");
  mcmc->require_subcommand(1);
  {
    auto m = std::make_shared<ModelFlags>();
    auto f = std::make_shared<ChainFlags>();
    auto ev = std::make_shared<std::string>("spin_at:0:+");
    auto* c = mcmc->add_subcommand("estimate", "event probability with batch-means error bar");
    add_model_flags(c, m.get());
    add_chain_flags(c, f.get());
    c->add_option("--event", *ev, "event spec")->capture_default_str();
    c->callback([m, f, ev] {
      const EventSpec spec = parse_event(*ev);
      const EventEstimate est =
          estimate_event(m->shape(), m->field(), m->params(), m->table(), spec, f->config());
      print(to_json(est, spec));
    });
  }
  {
    auto m = std::make_shared<ModelFlags>();
    auto f = std::make_shared<ChainFlags>();
    auto* c = mcmc->add_subcommand("snapshots", "thinned configurations (one +- line each)");
    add_model_flags(c, m.get());
    add_chain_flags(c, f.get());
    c->callback([m, f] {
      for (const SpinWindow& w :
           chain_snapshots(m->shape(), m->field(), m->params(), m->table(), f->config()))
        print(text_from_window(w) + "\n");
    });
  }

  // ---- geometry --------------------------------------------------------------
  auto* geo = app.add_subcommand("geometry", "runs, triangles and contours of a configuration");
  geo->require_subcommand(1);
  {
    auto spins = std::make_shared<std::string>();
    auto lo = std::make_shared<int>(0);
    auto vlo = std::make_shared<int>(0);
    auto vhi = std::make_shared<int>(0);
    auto* c = geo->add_subcommand("runs", "maximal-run decomposition and contract indices");
    c->add_option("--spins", *spins, "configuration as a +- string")->required();
    c->add_option("--lo", *lo, "site of the first character")->capture_default_str();
    c->add_option("--v-lo", *vlo, "inner interval lower end")->capture_default_str();
    c->add_option("--v-hi", *vhi, "inner interval upper end")->capture_default_str();
    c->callback([spins, lo, vlo, vhi] {
      print(to_json(runs(window_from_text(*spins, *lo), *vlo, *vhi)));
    });
  }
  {
    auto spins = std::make_shared<std::string>();
    auto lo = std::make_shared<int>(0);
    auto* c = geo->add_subcommand("triangulate", "triangle family of a configuration");
    c->add_option("--spins", *spins, "configuration as a +- string")->required();
    c->add_option("--lo", *lo, "site of the first character")->capture_default_str();
    c->callback([spins, lo] {
      print(to_json(triangles_from_spins(window_from_text(*spins, *lo))));
    });
  }
  {
    auto spins = std::make_shared<std::string>();
    auto lo = std::make_shared<int>(0);
    auto c_sep = std::make_shared<int>(3);
    auto* c = geo->add_subcommand("contours", "contour partition and its audit");
    c->add_option("--spins", *spins, "configuration as a +- string")->required();
    c->add_option("--lo", *lo, "site of the first character")->capture_default_str();
    c->add_option("--c-sep", *c_sep, "separation constant")->capture_default_str();
    c->callback([spins, lo, c_sep] {
      const TriangleFamily f = triangles_from_spins(window_from_text(*spins, *lo));
      const auto contours = decompose_contours(f, *c_sep);
      std::string out = "[\n";
      for (size_t i = 0; i < contours.size(); ++i) {
        out += "  {\"cover\": [" + std::to_string(contours[i].cover_lo()) + ", " +
               std::to_string(contours[i].cover_hi()) +
               "], \"mass\": " + std::to_string(contours[i].mass()) + ", \"members\": [";
        for (size_t k = 0; k < contours[i].members.size(); ++k)
          out += strprintf("%s[%d, %d]", k ? ", " : "", contours[i].members[k].supp_lo(),
                           contours[i].members[k].supp_hi());
        out += "]}";
        out += i + 1 < contours.size() ? ",\n" : "\n";
      }
      out += "]\n";
      print(out);
      print(to_json(verify_contours(f, *c_sep)));
    });
  }
  {
    auto spins = std::make_shared<std::string>();
    auto lo = std::make_shared<int>(0);
    auto alpha = std::make_shared<double>(0.0);
    auto j1 = std::make_shared<double>(10.0);
    auto c_sep = std::make_shared<int>(3);
    auto* c = geo->add_subcommand("peierls", "erasure-cost margins of a configuration");
    c->add_option("--spins", *spins, "configuration as a +- string")->required();
    c->add_option("--lo", *lo, "site of the first character")->capture_default_str();
    c->add_option("--alpha", *alpha, "coupling exponent")->capture_default_str();
    c->add_option("--j1", *j1, "nearest-neighbour coupling")->capture_default_str();
    c->add_option("--c-sep", *c_sep, "separation constant")->capture_default_str();
    c->callback([spins, lo, alpha, j1, c_sep] {
      const CouplingTable t(*alpha, *j1);
      print(to_json(peierls_check(triangles_from_spins(window_from_text(*spins, *lo)), t, *alpha,
                                  *c_sep)));
    });
  }
  {
    auto mass = std::make_shared<int>(2);
    auto b = std::make_shared<double>(10.0);
    auto alpha = std::make_shared<double>(0.5);
    auto c_sep = std::make_shared<int>(3);
    auto anchor = std::make_shared<std::string>("cover");
    auto* c = geo->add_subcommand("entropy", "weighted count of origin-anchored contours");
    c->add_option("--mass", *mass, "total contour mass (1..4)")->capture_default_str();
    c->add_option("--b", *b, "weight exponent scale")->capture_default_str();
    c->add_option("--alpha", *alpha, "coupling exponent")->capture_default_str();
    c->add_option("--c-sep", *c_sep, "separation constant")->capture_default_str();
    c->add_option("--anchor", *anchor, "cover | member (what must contain the origin)")
        ->capture_default_str();
    c->callback([mass, b, alpha, c_sep, anchor] {
      const bool origin_in_cover = *anchor != "member";
      if (*anchor != "member" && *anchor != "cover")
        throw std::invalid_argument("--anchor must be cover or member");
      print(to_json(entropy_sum(*mass, *b, *alpha, *c_sep, origin_in_cover), *mass, *b, *alpha));
    });
  }

  // ---- bounds ----------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "closed-form run-length plan calculators");
  bounds->require_subcommand(1);
  {
    auto alpha = std::make_shared<double>(0.0);
    auto j1 = std::make_shared<double>(10.0);
    auto d = std::make_shared<double>(1.0);
    auto* c = bounds->add_subcommand("e-alpha", "erasure-energy floor per block size");
    c->add_option("--alpha", *alpha, "coupling exponent")->capture_default_str();
    c->add_option("--j1", *j1, "nearest-neighbour coupling")->capture_default_str();
    c->add_option("--block-size", *d, "block size (>= 1)")->capture_default_str();
    c->callback([alpha, j1, d] {
      print(strprintf("{\n  \"energy\": %s\n}\n", fmt_double(e_alpha(*alpha, *j1, *d)).c_str()));
    });
  }
  {
    auto n = std::make_shared<long long>(400);
    auto tau = std::make_shared<double>(2.0);
    auto moment = std::make_shared<double>(0.25);
    auto* c = bounds->add_subcommand("lecam", "interval concentration bound for sign sums");
    c->add_option("--n", *n, "number of fields")->capture_default_str();
    c->add_option("--tau", *tau, "interval length")->capture_default_str();
    c->add_option("--moment", *moment, "censored second moment in (0,1]")->capture_default_str();
    c->callback([n, tau, moment] {
      print(strprintf("{\n  \"bound\": %s,\n  \"gaussian_refinement\": %s\n}\n",
                      fmt_double(lecam_bound(*n, *tau, *moment)).c_str(),
                      fmt_double(lecam_gaussian_refinement(*n, *tau)).c_str()));
    });
  }
  {
    auto theta = std::make_shared<double>(4.0);
    auto delta = std::make_shared<double>(0.0);
    auto* c = bounds->add_subcommand("berry-esseen", "undershoot lower bound for a block");
    c->add_option("--theta", *theta, "field strength")->capture_default_str();
    c->add_option("--delta", *delta, "block size (0 = balanced choice)")->capture_default_str();
    c->callback([theta, delta] {
      double d = *delta;
      if (d <= 0.0) {
        const double x = 8.0 / *theta;
        d = std::exp(std::log(512.0 * 3.14159265358979323846) + 2.0 * std::log1p(x) + x * x);
      }
      print(to_json(berry_esseen_lower(*theta, d)));
    });
  }
  {
    auto alpha = std::make_shared<double>(0.25);
    auto theta = std::make_shared<double>(0.1);
    auto beta = std::make_shared<double>(1.0);
    auto* c = bounds->add_subcommand("b-bar", "effective exponent scale");
    c->add_option("--alpha", *alpha, "coupling exponent")->capture_default_str();
    c->add_option("--theta", *theta, "field strength")->capture_default_str();
    c->add_option("--beta", *beta, "inverse temperature")->capture_default_str();
    c->callback([alpha, theta, beta] {
      print(strprintf("{\n  \"b_bar\": %s\n}\n",
                      fmt_double(b_bar(*beta, *theta, *alpha)).c_str()));
    });
  }
  {
    auto alpha = std::make_shared<double>(0.25);
    auto theta = std::make_shared<double>(0.1);
    auto beta = std::make_shared<double>(1.0);
    auto j1 = std::make_shared<double>(10.0);
    auto big_b = std::make_shared<double>(0.5);
    auto g1 = std::make_shared<double>(0.0);
    auto strict = std::make_shared<bool>(false);
    auto* c = bounds->add_subcommand("plan-upper", "no-long-run plan (block size, window, bounds)");
    c->add_option("--alpha", *alpha, "coupling exponent in [0, 1/2]")->capture_default_str();
    c->add_option("--theta", *theta, "field strength")->capture_default_str();
    c->add_option("--beta", *beta, "inverse temperature")->capture_default_str();
    c->add_option("--j1", *j1, "nearest-neighbour coupling")->capture_default_str();
    c->add_option("--big-b", *big_b, "budget split constant in (0,1)")->capture_default_str();
    c->add_option("--g1", *g1, "gauge value (0 = default gauge)")->capture_default_str();
    c->add_flag("--require-in-regime", *strict, "exit 1 unless all gating checks pass");
    c->callback([alpha, theta, beta, j1, big_b, g1, strict] {
      const double fixed = *g1;
      const double a = *alpha;
      const auto gauge = fixed > 0.0
                             ? std::function<double(double)>([fixed](double) { return fixed; })
                             : std::function<double(double)>(
                                   [a](double t) { return default_g(a, t); });
      const UpperBoundPlan p = plan_upper(a, *theta, *beta, *j1, *big_b, gauge);
      print(to_json(p));
      if (*strict && !p.in_regime) {
        require_in_regime(p);
      }
    });
  }
  {
    auto alpha = std::make_shared<double>(0.25);
    auto theta = std::make_shared<double>(0.1);
    auto beta = std::make_shared<double>(1.0);
    auto d_factor = std::make_shared<double>(2.0);
    auto g2 = std::make_shared<double>(0.0);
    auto strict = std::make_shared<bool>(false);
    auto* c = bounds->add_subcommand("plan-lower", "long-run existence plan");
    c->add_option("--alpha", *alpha, "coupling exponent in [0, 1/2]")->capture_default_str();
    c->add_option("--theta", *theta, "field strength")->capture_default_str();
    c->add_option("--beta", *beta, "inverse temperature")->capture_default_str();
    c->add_option("--d-factor", *d_factor, "slack factor D >= 1")->capture_default_str();
    c->add_option("--g2", *g2, "gauge value (0 = default gauge at theta)")->capture_default_str();
    c->add_flag("--require-in-regime", *strict, "exit 1 unless all gating checks pass");
    c->callback([alpha, theta, beta, d_factor, g2, strict] {
      const double fixed = *g2;
      const double a = *alpha, t = *theta;
      const auto gauge = fixed > 0.0
                             ? std::function<double(double)>([fixed](double) { return fixed; })
                             : std::function<double(double)>(
                                   [a, t](double) { return default_g(a, t); });
      const LowerBoundPlan p = plan_lower(a, t, *beta, *d_factor, gauge);
      print(to_json(p));
      if (*strict && !p.in_regime) {
        require_in_regime(p);
      }
    });
  }
  {
    auto alpha = std::make_shared<double>(0.25);
    auto theta = std::make_shared<double>(0.1);
    auto beta = std::make_shared<double>(1.0);
    auto j1 = std::make_shared<double>(10.0);
    auto big_b = std::make_shared<double>(0.5);
    auto d_factor = std::make_shared<double>(2.0);
    auto strict = std::make_shared<bool>(false);
    auto* c = bounds->add_subcommand("summary", "both plans plus regime gates and bracket");
    c->add_option("--alpha", *alpha, "coupling exponent in [0, 1/2]")->capture_default_str();
    c->add_option("--theta", *theta, "field strength")->capture_default_str();
    c->add_option("--beta", *beta, "inverse temperature")->capture_default_str();
    c->add_option("--j1", *j1, "nearest-neighbour coupling")->capture_default_str();
    c->add_option("--big-b", *big_b, "budget split constant in (0,1)")->capture_default_str();
    c->add_option("--d-factor", *d_factor, "slack factor D >= 1")->capture_default_str();
    c->add_flag("--require-in-regime", *strict, "exit 1 unless every gate passes");
    c->callback([alpha, theta, beta, j1, big_b, d_factor, strict] {
      const TheoremSummary s = theorem_summary(*alpha, *theta, *beta, *j1, *big_b, *d_factor);
      print(to_json(s));
      if (*strict && !s.in_regime) {
        std::string msg = "summary out of regime; failed:";
        for (const auto& f : s.failed_checks) msg += " " + f;
        throw CheckFailure(msg);
      }
    });
  }

  // ---- scaling ---------------------------------------------------------------
  {
    auto cfg = std::make_shared<ScalingConfig>();
    auto out_dir = std::make_shared<std::string>("scaling_out");
    auto* c = app.add_subcommand(
        "scaling", "run-length growth experiment over a (alpha, theta) grid (long-running)");
    c->add_option("--alpha", cfg->alphas, "coupling exponents")->capture_default_str();
    c->add_option("--theta", cfg->thetas, "field strengths")->capture_default_str();
    c->add_option("--beta", cfg->beta, "inverse temperature")->capture_default_str();
    c->add_option("--j1", cfg->j1, "nearest-neighbour coupling")->capture_default_str();
    c->add_option("--lo", cfg->lo, "window lower end")->capture_default_str();
    c->add_option("--hi", cfg->hi, "window upper end")->capture_default_str();
    c->add_option("--draws", cfg->disorder_draws, "disorder draws per cell")
        ->capture_default_str();
    c->add_option("--sweeps", cfg->sweeps, "sweeps per chain")->capture_default_str();
    c->add_option("--burn-in", cfg->burn_in, "burn-in sweeps")->capture_default_str();
    c->add_option("--thinning", cfg->thinning, "sweeps between snapshots")->capture_default_str();
    c->add_option("--master-seed", cfg->master_seed, "master seed")->capture_default_str();
    c->add_option("--out", *out_dir, "output directory")->capture_default_str();
    c->callback([cfg, out_dir] {
      const ScalingResult r = run_scaling(*cfg);
      write_scaling(r, *out_dir);
      for (const auto& cell : r.cells)
        print(strprintf("alpha=%s theta=%s median=%s ci=[%s, %s] mean_interior=%s\n",
                        fmt_double(cell.alpha).c_str(), fmt_double(cell.theta).c_str(),
                        fmt_double(cell.median).c_str(), fmt_double(cell.ci_lo).c_str(),
                        fmt_double(cell.ci_hi).c_str(), fmt_double(cell.mean_interior).c_str()));
      print("wrote " + *out_dir + "/runlengths.csv, summary.csv, runlengths.gp\n");
    });
  }

  // ---- verify ----------------------------------------------------------------
  {
    auto spins = std::make_shared<std::string>();
    auto lo = std::make_shared<int>(0);
    auto alpha = std::make_shared<double>(0.0);
    auto j1 = std::make_shared<double>(10.0);
    auto c_sep = std::make_shared<int>(3);
    auto* c = app.add_subcommand(
        "verify", "all geometric checks for one configuration (exit 1 on any failure)");
    c->add_option("--spins", *spins, "configuration as a +- string")->required();
    c->add_option("--lo", *lo, "site of the first character")->capture_default_str();
    c->add_option("--alpha", *alpha, "coupling exponent")->capture_default_str();
    c->add_option("--j1", *j1, "nearest-neighbour coupling")->capture_default_str();
    c->add_option("--c-sep", *c_sep, "separation constant")->capture_default_str();
    c->callback([spins, lo, alpha, j1, c_sep] {
      const SpinWindow w = window_from_text(*spins, *lo);
      const TriangleFamily f = triangles_from_spins(w);
      const bool roundtrip = spins_from_triangles(f) == w;
      const bool compat = compatible(f);
      const CouplingTable t(*alpha, *j1);
      const PeierlsReport pr = peierls_check(f, t, *alpha, *c_sep);
      const ContourReport cr = verify_contours(f, *c_sep);
      print(strprintf("{\n  \"triangles\": %zu,\n  \"roundtrip_ok\": %s,\n"
                      "  \"compatible\": %s,\n  \"erasure_margins_ok\": %s,\n"
                      "  \"min_margin\": %s,\n  \"contour_audit_ok\": %s\n}\n",
                      f.triangles.size(), roundtrip ? "true" : "false",
                      compat ? "true" : "false", pr.pass ? "true" : "false",
                      fmt_double(pr.min_margin).c_str(), cr.ok() ? "true" : "false"));
      if (!(roundtrip && compat && pr.pass && cr.ok()))
        throw CheckFailure("configuration failed geometric verification");
    });
  }

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const CheckFailure& e) {
    std::fprintf(stderr, "check failed: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
