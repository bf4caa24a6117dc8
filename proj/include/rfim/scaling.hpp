#pragma once
#include <string>
#include <vector>

#include "rfim/core.hpp"

namespace rfim {

/** Grid experiment: how the typical run length at the origin grows as the
 *  field strength theta shrinks, at fixed beta, pooled over shared disorder
 *  draws (the same disorder stream is reused across theta for pairing). */
struct ScalingConfig {
  std::vector<double> alphas{0.0};
  std::vector<double> thetas{0.5, 0.35, 0.25};
  double beta = 2.0;
  double j1 = 10.0;
  int lo = -1000;
  int hi = 999;
  int disorder_draws = 20;
  long long sweeps = 6000;
  long long burn_in = 2000;
  long long thinning = 200;
  unsigned long long master_seed = 0xACCE5510ULL;
  DisorderKind kind = DisorderKind::bernoulli;
};

struct ScalingCell {
  double alpha = 0.0;
  double theta = 0.0;
  std::vector<double> origin_lengths;  // one per (disorder draw, snapshot)
  double median = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // bootstrap 95% interval for the median
  double mean_interior = 0.0;       // mean length of runs away from the edges
  long long interior_runs = 0;
  double log_l_max = 0.0;  // plan context at these parameters
  bool plan_in_regime = false;
};

struct ScalingResult {
  ScalingConfig config;
  std::vector<ScalingCell> cells;   // alpha-major, theta in config order
  std::string runlengths_csv;      // one row per maximal run per snapshot
  std::string summary_csv;         // one row per (alpha, theta) cell
  std::string plot_script;         // gnuplot script for the summary
};

/** Run the whole grid deterministically from config.master_seed. */
ScalingResult run_scaling(const ScalingConfig& cfg);

/** Write runlengths.csv, summary.csv and runlengths.gp under out_dir
 *  (the directory is created if needed). */
void write_scaling(const ScalingResult& r, const std::string& out_dir);

}  // namespace rfim
