#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carriergame/channel.hpp"

namespace carriergame {

enum class SweepVariable { Carriers, SnrDb, Theta };

std::string to_string(SweepVariable v);

/// Monte Carlo experiment description. `values` must be non-empty and
/// strictly increasing; each value overrides the swept field of `base`.
struct SweepSpec {
  SweepVariable variable = SweepVariable::Carriers;
  std::vector<double> values;
  int trials = 10000;
  GameConfig base;
  std::uint64_t seed = 1;
  bool run_nash = true;
  bool run_stackelberg = true;

  void validate() const;  // throws std::invalid_argument
};

/// Aggregates for one sweep value. Confidence half-widths are 95% normal
/// approximations; frequencies use the binomial standard error. Fields tied
/// to a solver that was not requested are NaN.
struct SweepPoint {
  double value = 0.0;
  int trials = 0;

  double ee_stackelberg_leader = 0.0;
  double ee_stackelberg_follower = 0.0;
  double ee_stackelberg_sum = 0.0;
  double ee_nash_sum = 0.0;
  int nash_excluded = 0;  // trials without a feasible simultaneous-move profile

  double p_nocoord_stackelberg = 0.0;
  double p_nocoord_nash = 0.0;
  double p_nocoord_bound = 0.0;

  double se_mean = 0.0;   // realized spectral efficiency of the hierarchical outcome
  double se_bound = 0.0;

  double p_lead_preferred = 0.0;
  double p_same_best_carrier = 0.0;

  double welfare_ratio_vs_nash_mean = 0.0;
  double welfare_ratio_vs_nash_max = 0.0;
  double welfare_ratio_vs_max_mean = 0.0;
  double welfare_ratio_vs_max_max = 0.0;
  int welfare_defined_trials = 0;

  double ci_ee_stackelberg_sum = 0.0;
  double ci_ee_nash_sum = 0.0;
  double ci_p_nocoord_stackelberg = 0.0;
  double ci_p_nocoord_nash = 0.0;
  double ci_se_mean = 0.0;
  double ci_p_lead_preferred = 0.0;

  int anomalies = 0;  // per-trial solver exceptions (counted, never dropped)
};

struct SweepResult {
  SweepVariable variable = SweepVariable::Carriers;
  std::uint64_t seed = 0;
  int trials = 0;
  bool run_nash = true;
  bool run_stackelberg = true;
  std::vector<SweepPoint> points;
};

/// Runs the sweep. Trial t of sweep point i draws its channel from the
/// counter stream (seed, i, t), so results are independent of scheduling;
/// per-trial statistics are reduced by pairwise summation in trial order,
/// making parallel and serial runs bit-identical. `threads` <= 0 reads
/// CARRIERGAME_THREADS, falling back to the hardware concurrency.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Mean (energy efficiency, spectral efficiency) pairs of the hierarchical
/// outcome per sweep value, optionally restricted to coordinated trials.
/// Uses the same channel streams as run_sweep.
std::vector<std::pair<double, double>> run_se_tradeoff(const SweepSpec& spec,
                                                       bool coordinated_only = false,
                                                       int threads = 0);

}  // namespace carriergame
