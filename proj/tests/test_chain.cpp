// Tests for the single-site Markov chain sampler: stationarity against the
// exact enumerator, detailed balance, energy bookkeeping, reproducibility,
// and error-bar behaviour. Weak coupling (j1 = 1.2) keeps mixing fast.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rfim/chain.hpp>
#include <rfim/core.hpp>
#include <rfim/events.hpp>
#include <rfim/exact.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

using namespace rfim;

namespace {

/** Error floor for a Bernoulli mean from n samples: the batch estimate can be
 *  deceptively small, so compare against the rule-of-succession rate too. */
double tolerance(const EventEstimate& est, double z) {
  const double p = (est.mean * static_cast<double>(est.samples) + 1.0) /
                   (static_cast<double>(est.samples) + 2.0);
  const double floor_se = std::sqrt(p * (1.0 - p) / static_cast<double>(est.samples));
  return z * std::max(est.std_error, floor_se);
}

}  // namespace

TEST_CASE("high temperature: spin marginals are near one half") {
  ModelParams p;
  p.alpha = 0.0;
  p.j1 = 1.2;
  p.beta = 0.01;
  p.theta = 0.0;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(-3, 2);
  DisorderField h = sample_disorder(DisorderKind::bernoulli, -3, 2, 4);
  ChainConfig cfg;
  cfg.sweeps = 4100;
  cfg.burn_in = 100;
  cfg.thinning = 1;
  cfg.seed = 1;
  const auto est = estimate_event(shape, h, p, t, parse_event("spin_at:0:+"), cfg);
  CHECK(est.samples == 4000);
  CHECK(std::fabs(est.mean - 0.5) <= tolerance(est, 5.0));
}

TEST_CASE("deep quench from the boundary state never flips") {
  ModelParams p;
  p.alpha = 0.5;
  p.j1 = 10.0;
  p.beta = 50.0;
  p.theta = 0.0;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(0, 9);
  DisorderField h = sample_disorder(DisorderKind::bernoulli, 0, 9, 6);
  for (auto rule : {UpdateRule::heat_bath, UpdateRule::metropolis}) {
    ChainConfig cfg;
    cfg.sweeps = 200;
    cfg.seed = 2;
    cfg.update_rule = rule;
    cfg.initial = InitialState::all_boundary;
    Chain chain(shape, h, p, t, cfg);
    for (int s = 0; s < 200; ++s) chain.sweep();
    CHECK(chain.accepted_flips() == 0);
    for (int i = 0; i < 10; ++i) CHECK(chain.spins().spins[size_t(i)] == +1);
  }
}

TEST_CASE("single updates satisfy detailed balance on a two-site window") {
  ModelParams p;
  p.alpha = 0.25;
  p.j1 = 1.5;
  p.beta = 0.6;
  p.theta = 0.8;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(0, 1);
  DisorderField h = sample_disorder(DisorderKind::gaussian, 0, 1, 10);

  // exact stationary weights pi(x) for the four states, from raw energies
  std::vector<SpinWindow> states;
  std::vector<double> pi;
  double z = 0.0;
  for (int m = 0; m < 4; ++m) {
    SpinWindow w = shape;
    w.spins[0] = (m & 1) ? +1 : -1;
    w.spins[1] = (m & 2) ? +1 : -1;
    states.push_back(w);
    const double wt = std::exp(-p.beta * total_energy(w, h, p, t));
    pi.push_back(wt);
    z += wt;
  }
  for (auto& v : pi) v /= z;

  // empirical single-update transition frequencies out of each state
  std::map<std::pair<int, int>, long long> count;
  ChainConfig cfg;
  cfg.seed = 11;
  Chain chain(shape, h, p, t, cfg);
  const long long reps = 200000;
  auto index_of = [&](const SpinWindow& w) {
    return (w.spins[0] > 0 ? 1 : 0) | (w.spins[1] > 0 ? 2 : 0);
  };
  for (long long r = 0; r < reps; ++r) {
    const int from = static_cast<int>(r % 4);
    chain.set_state(states[size_t(from)]);
    chain.single_update();
    count[{from, index_of(chain.spins())}]++;
  }
  const double per_state = static_cast<double>(reps) / 4.0;

  // pi(x) T(x,y) == pi(y) T(y,x) for every pair x != y, within Monte Carlo error
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      if (x == y) continue;
      const double txy = static_cast<double>(count[{x, y}]) / per_state;
      const double tyx = static_cast<double>(count[{y, x}]) / per_state;
      const double lhs = pi[size_t(x)] * txy;
      const double rhs = pi[size_t(y)] * tyx;
      // binomial noise on each side is below ~0.5/sqrt(per_state) ~= 2.2e-3
      CHECK(std::fabs(lhs - rhs) <= 6e-3);
    }
  }
}

TEST_CASE("chain estimates agree with exact probabilities on a small window") {
  ModelParams p;
  p.alpha = 0.3;
  p.j1 = 1.2;
  p.beta = 1.5;
  p.theta = 0.2;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(-4, 3);
  DisorderField h = sample_disorder(DisorderKind::gaussian, -4, 3, 12);
  ChainConfig cfg;
  cfg.sweeps = 9000;
  cfg.burn_in = 1000;
  cfg.thinning = 2;
  cfg.seed = 3;
  for (auto rule : {UpdateRule::heat_bath, UpdateRule::metropolis}) {
    cfg.update_rule = rule;
    const auto ev = parse_event("run_equals:-1..1:+");
    const double exact = event_probability(shape, h, p, t, ev);
    const auto est = estimate_event(shape, h, p, t, ev, cfg);
    CHECK(est.samples == 4000);
    CHECK(std::fabs(est.mean - exact) <= tolerance(est, 4.0));
  }
}

TEST_CASE("estimates of complementary events from the same seed sum to one") {
  ModelParams p;
  p.alpha = 0.0;
  p.j1 = 1.2;
  p.beta = 1.0;
  p.theta = 0.4;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(0, 7);
  DisorderField h = sample_disorder(DisorderKind::bernoulli, 0, 7, 14);
  ChainConfig cfg;
  cfg.sweeps = 1100;
  cfg.burn_in = 100;
  cfg.seed = 4;
  const auto plus = estimate_event(shape, h, p, t, parse_event("spin_at:3:+"), cfg);
  const auto minus = estimate_event(shape, h, p, t, parse_event("spin_at:3:-"), cfg);
  // identical trajectories, complementary indicators
  CHECK(plus.mean + minus.mean == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("standard error shrinks roughly like one over the square root of samples") {
  ModelParams p;
  p.alpha = 0.25;
  p.j1 = 1.2;
  p.beta = 0.7;
  p.theta = 0.3;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(-5, 4);
  DisorderField h = sample_disorder(DisorderKind::gaussian, -5, 4, 15);
  const auto ev = parse_event("spin_at:0:+");
  ChainConfig small;
  small.sweeps = 4200;
  small.burn_in = 1000;
  small.thinning = 2;
  small.seed = 5;
  ChainConfig big = small;
  big.sweeps = 13800;  // 4x the sample count of `small`
  const auto a = estimate_event(shape, h, p, t, ev, small);
  const auto b = estimate_event(shape, h, p, t, ev, big);
  REQUIRE(a.samples == 1600);
  REQUIRE(b.samples == 6400);
  CHECK(a.std_error > 0.0);
  CHECK(b.std_error > 0.0);
  const double ratio = a.std_error / b.std_error;
  CHECK(ratio >= 1.2);
  CHECK(ratio <= 3.4);
}

TEST_CASE("telescoped accepted deltas reproduce the current energy") {
  ModelParams p;
  p.alpha = 0.25;
  p.j1 = 1.2;
  p.beta = 0.8;
  p.theta = 0.5;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(-6, 5);
  DisorderField h = sample_disorder(DisorderKind::gaussian, -6, 5, 16);
  for (auto rule : {UpdateRule::heat_bath, UpdateRule::metropolis}) {
    ChainConfig cfg;
    cfg.seed = 6;
    cfg.update_rule = rule;
    cfg.initial = InitialState::random;
    Chain chain(shape, h, p, t, cfg);
    // crosses the internal cache-rebuild boundary at 1000 sweeps
    for (int s = 0; s < 1500; ++s) chain.sweep();
    CHECK(chain.accepted_flips() > 0);
    const double telescoped = chain.initial_energy() + chain.accepted_delta_sum();
    const double fresh = total_energy(chain.spins(), h, p, t);
    CHECK(std::fabs(telescoped - fresh) <= 1e-6);
  }
}

TEST_CASE("snapshots are reproducible and respond to the seed") {
  ModelParams p;
  p.alpha = 0.0;
  p.j1 = 1.2;
  p.beta = 0.3;  // soft enough that flips happen and trajectories diverge
  p.theta = 0.3;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(0, 9);
  DisorderField h = sample_disorder(DisorderKind::bernoulli, 0, 9, 20);
  ChainConfig cfg;
  cfg.sweeps = 300;
  cfg.burn_in = 100;
  cfg.thinning = 10;
  cfg.seed = 7;
  const auto a = chain_snapshots(shape, h, p, t, cfg);
  const auto b = chain_snapshots(shape, h, p, t, cfg);
  REQUIRE(a.size() == 20);
  CHECK(a == b);
  cfg.seed = 8;
  const auto c = chain_snapshots(shape, h, p, t, cfg);
  CHECK(a != c);
}

TEST_CASE("insufficient sampling budgets are rejected") {
  ModelParams p;
  p.alpha = 0.0;
  p.j1 = 1.2;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(0, 3);
  DisorderField h = sample_disorder(DisorderKind::bernoulli, 0, 3, 1);
  ChainConfig cfg;
  cfg.sweeps = 110;  // only 10 post-burn-in samples; at least 20 required
  cfg.burn_in = 100;
  cfg.thinning = 1;
  CHECK_THROWS_AS(estimate_event(shape, h, p, t, parse_event("spin_at:0:+"), cfg),
                  std::invalid_argument);
  ChainConfig bad;
  bad.burn_in = 2000;  // burn-in beyond the sweep budget
  bad.sweeps = 1000;
  CHECK_THROWS_AS(estimate_event(shape, h, p, t, parse_event("spin_at:0:+"), bad),
                  std::invalid_argument);
  ChainConfig thin;
  thin.thinning = 0;
  CHECK_THROWS_AS(chain_snapshots(shape, h, p, t, thin), std::invalid_argument);
}

TEST_CASE("every event kind matches the exact enumerator on a twelve-site window") {
  ModelParams p;
  p.alpha = 0.0;
  p.j1 = 1.2;
  p.beta = 1.2;
  p.theta = 0.3;
  CouplingTable t(p.alpha, p.j1);
  SpinWindow shape = make_window(-6, 5);
  DisorderField h = sample_disorder(DisorderKind::gaussian, -6, 5, 22);
  ChainConfig cfg;
  cfg.sweeps = 8200;
  cfg.burn_in = 1000;
  cfg.thinning = 2;
  cfg.seed = 9;
  const char* events[] = {
      "spin_at:-3:-",         "run_equals:-1..1:+", "run_any:2..4",
      "long_run:-5..5:3",     "well:-1..1:-",       "small_well_at:0:2:-",
      "any_small_well:-4..4:2"};
  for (const char* text : events) {
    CAPTURE(text);
    const auto ev = parse_event(text);
    const double exact = event_probability(shape, h, p, t, ev);
    const auto est = estimate_event(shape, h, p, t, ev, cfg);
    CHECK(std::fabs(est.mean - exact) <= tolerance(est, 4.0));
  }
}
