#include "carriergame/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "carriergame/analysis.hpp"
#include "carriergame/equilibrium.hpp"
#include "carriergame/stats.hpp"

namespace carriergame {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Carriers: return "K";
    case SweepVariable::SnrDb: return "SNR_dB";
    case SweepVariable::Theta: return "theta";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: values must be non-empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw std::invalid_argument("sweep: values must be strictly increasing");
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (!run_nash && !run_stackelberg)
    throw std::invalid_argument("sweep: at least one solver required");
  base.validate();
}

namespace {

constexpr double kSolverEpsilon = 1e-6;

GameConfig apply_value(const GameConfig& base, SweepVariable variable, double value) {
  GameConfig c = base;
  switch (variable) {
    case SweepVariable::Carriers:
      c.num_carriers = static_cast<int>(std::lround(value));
      break;
    case SweepVariable::SnrDb:
      c.noise_variance = std::pow(10.0, -value / 10.0);
      break;
    case SweepVariable::Theta:
      c.theta = value;
      break;
  }
  return c;
}

int resolve_threads(int override_threads) {
  if (override_threads > 0) return override_threads;
  if (const char* env = std::getenv("CARRIERGAME_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

// Runs fn(t) for t in [0, trials). Workers own disjoint contiguous chunks;
// all output is written into per-trial slots, so scheduling cannot affect
// the result.
template <typename Fn>
void for_each_trial(int trials, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (trials + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int t = lo; t < hi; ++t) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

struct TrialRecord {
  double ee_st_leader = 0.0;
  double ee_st_follower = 0.0;
  double se_st = 0.0;
  bool st_uncoordinated = false;
  bool lead_preferred = false;
  bool nash_defined = false;
  double ee_nash_sum = 0.0;
  bool nash_uncoordinated = false;
  bool welfare_defined = false;
  double ratio_vs_nash = 0.0;
  double ratio_vs_max = 0.0;
  bool same_best = false;
  bool anomaly = false;
};

double reduce(const std::vector<TrialRecord>& rs, double (*pick)(const TrialRecord&)) {
  std::vector<double> xs(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) xs[i] = pick(rs[i]);
  return pairwise_sum(xs);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const int nthreads = resolve_threads(threads);
  const GammaStar gamma = solve_gamma_star(spec.base.model);

  SweepResult result;
  result.variable = spec.variable;
  result.seed = spec.seed;
  result.trials = spec.trials;
  result.run_nash = spec.run_nash;
  result.run_stackelberg = spec.run_stackelberg;

  const double nan = std::nan("");

  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    const GameConfig config = apply_value(spec.base, spec.variable, spec.values[vi]);
    config.validate();

    std::vector<TrialRecord> rs(static_cast<std::size_t>(spec.trials));
    for_each_trial(spec.trials, nthreads, [&](int t) {
      TrialRecord& rec = rs[static_cast<std::size_t>(t)];
      try {
        const ChannelRealization ch = sample_channels(
            config, spec.seed, static_cast<std::uint64_t>(vi), static_cast<std::uint64_t>(t));
        rec.same_best = ch.best(0) == ch.best(1);

        EquilibriumOutcome st;
        if (spec.run_stackelberg) {
          st = stackelberg_solve(ch, config, gamma, kSolverEpsilon);
          rec.ee_st_leader = (*st.utilities)[0];
          rec.ee_st_follower = (*st.utilities)[1];
          rec.se_st = realized_spectral_efficiency(st, ch);
          rec.st_uncoordinated = !st.coordinated;
          rec.lead_preferred = leader_prefers_leading(ch, config, gamma);
        }
        if (spec.run_nash) {
          const EquilibriumOutcome na = nash_solve(ch, config, gamma);
          rec.nash_uncoordinated = !na.coordinated;
          if (na.utilities) {
            rec.nash_defined = true;
            rec.ee_nash_sum = (*na.utilities)[0] + (*na.utilities)[1];
          }
          if (spec.run_stackelberg && na.utilities) {
            const WelfareReport w = welfare_report(ch, na, st, config, gamma);
            rec.welfare_defined = true;
            rec.ratio_vs_nash = *w.ratio_vs_nash;
            rec.ratio_vs_max = w.ratio_vs_max;
          }
        }
      } catch (...) {
        rec.anomaly = true;
      }
    });

    SweepPoint p;
    p.value = spec.values[vi];
    p.trials = spec.trials;
    const double n = static_cast<double>(spec.trials);
    p.p_nocoord_bound = no_coordination_bound(config.num_carriers, gamma).bound;
    p.se_bound = spectral_efficiency_bound(config.num_carriers, gamma);
    p.p_same_best_carrier =
        reduce(rs, [](const TrialRecord& r) { return r.same_best ? 1.0 : 0.0; }) / n;
    p.anomalies = static_cast<int>(
        reduce(rs, [](const TrialRecord& r) { return r.anomaly ? 1.0 : 0.0; }));

    if (spec.run_stackelberg) {
      const double lead = reduce(rs, [](const TrialRecord& r) { return r.ee_st_leader; });
      const double foll = reduce(rs, [](const TrialRecord& r) { return r.ee_st_follower; });
      p.ee_stackelberg_leader = lead / n;
      p.ee_stackelberg_follower = foll / n;
      p.ee_stackelberg_sum = (lead + foll) / n;
      const double sum_sq = reduce(rs, [](const TrialRecord& r) {
        const double s = r.ee_st_leader + r.ee_st_follower;
        return s * s;
      });
      p.ci_ee_stackelberg_sum =
          mean_half_width(lead + foll, sum_sq, static_cast<std::size_t>(spec.trials));

      p.p_nocoord_stackelberg =
          reduce(rs, [](const TrialRecord& r) { return r.st_uncoordinated ? 1.0 : 0.0; }) / n;
      p.ci_p_nocoord_stackelberg =
          binomial_half_width(p.p_nocoord_stackelberg, static_cast<std::size_t>(spec.trials));

      const double se_sum = reduce(rs, [](const TrialRecord& r) { return r.se_st; });
      const double se_sq = reduce(rs, [](const TrialRecord& r) { return r.se_st * r.se_st; });
      p.se_mean = se_sum / n;
      p.ci_se_mean = mean_half_width(se_sum, se_sq, static_cast<std::size_t>(spec.trials));

      p.p_lead_preferred =
          reduce(rs, [](const TrialRecord& r) { return r.lead_preferred ? 1.0 : 0.0; }) / n;
      p.ci_p_lead_preferred =
          binomial_half_width(p.p_lead_preferred, static_cast<std::size_t>(spec.trials));
    } else {
      p.ee_stackelberg_leader = p.ee_stackelberg_follower = p.ee_stackelberg_sum = nan;
      p.ci_ee_stackelberg_sum = nan;
      p.p_nocoord_stackelberg = p.ci_p_nocoord_stackelberg = nan;
      p.se_mean = p.ci_se_mean = nan;
      p.p_lead_preferred = p.ci_p_lead_preferred = nan;
    }

    if (spec.run_nash) {
      const int included = static_cast<int>(
          reduce(rs, [](const TrialRecord& r) { return r.nash_defined ? 1.0 : 0.0; }));
      p.nash_excluded = spec.trials - included;
      const double nash_sum = reduce(rs, [](const TrialRecord& r) { return r.ee_nash_sum; });
      const double nash_sq =
          reduce(rs, [](const TrialRecord& r) { return r.ee_nash_sum * r.ee_nash_sum; });
      p.ee_nash_sum = included > 0 ? nash_sum / included : nan;
      p.ci_ee_nash_sum =
          included > 0 ? mean_half_width(nash_sum, nash_sq, static_cast<std::size_t>(included))
                       : nan;
      p.p_nocoord_nash =
          reduce(rs, [](const TrialRecord& r) { return r.nash_uncoordinated ? 1.0 : 0.0; }) / n;
      p.ci_p_nocoord_nash =
          binomial_half_width(p.p_nocoord_nash, static_cast<std::size_t>(spec.trials));
    } else {
      p.ee_nash_sum = p.ci_ee_nash_sum = nan;
      p.p_nocoord_nash = p.ci_p_nocoord_nash = nan;
      p.nash_excluded = 0;
    }

    if (spec.run_nash && spec.run_stackelberg) {
      const int defined = static_cast<int>(
          reduce(rs, [](const TrialRecord& r) { return r.welfare_defined ? 1.0 : 0.0; }));
      p.welfare_defined_trials = defined;
      if (defined > 0) {
        p.welfare_ratio_vs_nash_mean =
            reduce(rs, [](const TrialRecord& r) { return r.ratio_vs_nash; }) / defined;
        p.welfare_ratio_vs_max_mean =
            reduce(rs, [](const TrialRecord& r) { return r.ratio_vs_max; }) / defined;
        double max_nash = 0.0, max_max = 0.0;
        for (const TrialRecord& r : rs) {
          if (!r.welfare_defined) continue;
          max_nash = std::max(max_nash, r.ratio_vs_nash);
          max_max = std::max(max_max, r.ratio_vs_max);
        }
        p.welfare_ratio_vs_nash_max = max_nash;
        p.welfare_ratio_vs_max_max = max_max;
      } else {
        p.welfare_ratio_vs_nash_mean = p.welfare_ratio_vs_nash_max = nan;
        p.welfare_ratio_vs_max_mean = p.welfare_ratio_vs_max_max = nan;
      }
    } else {
      p.welfare_defined_trials = 0;
      p.welfare_ratio_vs_nash_mean = p.welfare_ratio_vs_nash_max = nan;
      p.welfare_ratio_vs_max_mean = p.welfare_ratio_vs_max_max = nan;
    }

    result.points.push_back(p);
  }
  return result;
}

std::vector<std::pair<double, double>> run_se_tradeoff(const SweepSpec& spec,
                                                       bool coordinated_only,
                                                       int threads) {
  spec.validate();
  const int nthreads = resolve_threads(threads);
  const GammaStar gamma = solve_gamma_star(spec.base.model);

  std::vector<std::pair<double, double>> out;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    const GameConfig config = apply_value(spec.base, spec.variable, spec.values[vi]);
    config.validate();

    std::vector<double> ee(static_cast<std::size_t>(spec.trials), 0.0);
    std::vector<double> se(static_cast<std::size_t>(spec.trials), 0.0);
    std::vector<double> keep(static_cast<std::size_t>(spec.trials), 0.0);
    for_each_trial(spec.trials, nthreads, [&](int t) {
      const ChannelRealization ch = sample_channels(
          config, spec.seed, static_cast<std::uint64_t>(vi), static_cast<std::uint64_t>(t));
      const EquilibriumOutcome st = stackelberg_solve(ch, config, gamma, kSolverEpsilon);
      if (coordinated_only && !st.coordinated) return;
      const std::size_t i = static_cast<std::size_t>(t);
      ee[i] = (*st.utilities)[0] + (*st.utilities)[1];
      se[i] = realized_spectral_efficiency(st, ch);
      keep[i] = 1.0;
    });
    const double kept = pairwise_sum(keep);
    if (kept > 0.0) {
      out.emplace_back(pairwise_sum(ee) / kept, pairwise_sum(se) / kept);
    } else {
      out.emplace_back(std::nan(""), std::nan(""));
    }
  }
  return out;
}

}  // namespace carriergame
