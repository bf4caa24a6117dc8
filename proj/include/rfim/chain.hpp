#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rfim/core.hpp"
#include "rfim/events.hpp"
#include "rfim/kahan.hpp"
#include "rfim/rng.hpp"

namespace rfim {

enum class UpdateRule { metropolis, heat_bath };
enum class InitialState { all_boundary, random };

std::string to_string(UpdateRule r);
UpdateRule update_rule_from_string(const std::string& s);
std::string to_string(InitialState s);
InitialState initial_state_from_string(const std::string& s);

struct ChainConfig {
  long long sweeps = 1000;
  long long burn_in = 100;
  long long thinning = 1;
  std::uint64_t seed = 1;
  UpdateRule update_rule = UpdateRule::heat_bath;
  InitialState initial = InitialState::all_boundary;
};

struct EventEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double effective_samples = 0.0;  // samples if std_error == 0, else p(1-p)/se^2
  long long samples = 0;
};

/** Single-site random-scan Markov chain for the finite-window Gibbs measure.
 *
 *  One sweep = |window| independently uniform site picks. Local pair fields
 *  are cached and updated in O(|window|) per accepted flip; they are rebuilt
 *  from scratch every 1000 sweeps. The accepted-move energy deltas accumulate
 *  in a never-reset telescoping sum for the energy-bookkeeping audit.
 */
class Chain {
 public:
  /** `shape` provides lo/hi/boundary; the starting spins follow cfg.initial. */
  Chain(const SpinWindow& shape, const DisorderField& h, const ModelParams& p,
        const CouplingTable& t, const ChainConfig& cfg);

  void single_update();
  void sweep();

  const SpinWindow& spins() const { return w_; }
  /** Replace the state (diagnostics/tests); rebuilds caches. */
  void set_state(const SpinWindow& w);

  double initial_energy() const { return e0_; }
  double accepted_delta_sum() const { return acc_.value(); }
  long long accepted_flips() const { return flips_; }
  long long sweeps_done() const { return sweeps_done_; }

 private:
  void rebuild_pair_fields();
  void apply_flip(int idx, double delta);

  SpinWindow w_;
  ModelParams p_;
  const CouplingTable* t_;
  ChainConfig cfg_;
  Rng rng_;
  std::vector<double> j_by_dist_;    // [d] = J(d) for d in [1, n-1]
  std::vector<double> static_field_; // boundary tails + theta h, per site
  std::vector<double> pair_field_;   // sum_j J(|i-j|) s_j, per site
  double e0_ = 0.0;
  Kahan acc_;
  long long flips_ = 0;
  long long sweeps_done_ = 0;
};

/** Estimate the event's Gibbs probability from a fresh chain: samples every
 *  `thinning` sweeps after burn-in; the standard error comes from 20 equal
 *  batches over the most recent 20*floor(n/20) samples. Throws when fewer
 *  than 20 samples would be collected. */
EventEstimate estimate_event(const SpinWindow& shape, const DisorderField& h,
                             const ModelParams& p, const CouplingTable& t,
                             const EventSpec& ev, const ChainConfig& cfg);

/** Thinned post-burn-in snapshots of a fresh chain. */
std::vector<SpinWindow> chain_snapshots(const SpinWindow& shape, const DisorderField& h,
                                        const ModelParams& p, const CouplingTable& t,
                                        const ChainConfig& cfg);

}  // namespace rfim
