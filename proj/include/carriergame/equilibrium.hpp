#pragma once

#include <array>
#include <optional>
#include <vector>

#include "carriergame/allocation.hpp"
#include "carriergame/channel.hpp"
#include "carriergame/efficiency.hpp"

namespace carriergame {

enum class EquilibriumKind {
  NashExact,
  NashInfeasible,  // same-carrier fixed point does not exist (gamma* >= 1)
  StackelbergExact,
  StackelbergEpsilon,
  NoEquilibrium,
};

/// Which closed-form branch produced the outcome. V/W/U/V0 are the four
/// leader candidate values compared when both users share the best carrier;
/// Split marks outcomes decided purely by distinct best carriers (or the
/// coordinated simultaneous-move cases); SameCarrierNash marks the
/// simultaneous-move fixed point with both users on one carrier.
enum class WinningValue { V, W, U, V0, Split, SameCarrierNash };

struct EquilibriumOutcome {
  EquilibriumKind kind = EquilibriumKind::NoEquilibrium;
  double epsilon = 0.0;  // set for StackelbergEpsilon
  PowerAllocation alloc;
  /// Per-user utilities (bit/J), absent when the outcome carries no feasible
  /// allocation (NashInfeasible).
  std::optional<std::array<double, 2>> utilities;
  std::array<std::optional<int>, 2> active_carriers;
  bool coordinated = false;  // true iff the active carriers are distinct
  std::optional<WinningValue> winner;
};

/// The four values the leader compares when both users share the best
/// carrier and the follower's gap exceeds gamma*.
struct LeaderCandidates {
  double v = 0.0;   // shared-carrier stationary point; -inf when beta* absent
  double w = 0.0;   // boundary power pushing the follower off the carrier
  double u = 0.0;   // retreat to the leader's second-best carrier
  double v0 = 0.0;  // vanishing-power limit on the best carrier
  BetaStar beta_star;
};

/// Energy efficiency R_n sum_k f(sinr_n^k) / sum_k p_n^k (bit/J).
/// Throws zero_power_error when the user's power vector is identically zero.
double utility(const PowerAllocation& alloc, const ChannelRealization& gains,
               const EfficiencyModel& model, int user);

/// The follower's exact best response to a fixed leader row: all power on the
/// carrier with the largest effective gain (ties toward the lower index) at
/// the power that puts the follower's SINR exactly at gamma*.
std::vector<double> follower_best_response(const std::vector<double>& leader_row,
                                           const ChannelRealization& gains,
                                           const GammaStar& gamma_star);

/// Requires best(0) == best(1) and gamma_hat > gamma*.
LeaderCandidates leader_candidates(const ChannelRealization& gains,
                                   const GammaStar& gamma_star,
                                   const EfficiencyModel& model);

/// Closed-form leader-follower equilibrium. `epsilon` is consumed only by the
/// degenerate branch where the vanishing-power value V0 is the strict best
/// and only epsilon-equilibria exist (impossible for exp_block models).
EquilibriumOutcome stackelberg_solve(const ChannelRealization& gains,
                                     const GameConfig& config,
                                     const GammaStar& gamma_star, double epsilon);

/// Simultaneous-move equilibrium under a fixed selection rule:
///  - distinct best carriers: each user on its own best carrier;
///  - shared best carrier, exactly one user with best/second ratio above
///    1 + gamma*: that user keeps the best carrier, the other retreats;
///  - both ratios at most 1 + gamma*: two split profiles exist, the user
///    with the larger ratio keeps the best carrier (tie toward user 1);
///  - both ratios above 1 + gamma*: no split profile exists; for gamma* < 1
///    both users share the carrier at the mutual-SINR-gamma* fixed point,
///    for gamma* >= 1 that fixed point is infeasible (NashInfeasible).
EquilibriumOutcome nash_solve(const ChannelRealization& gains,
                              const GameConfig& config,
                              const GammaStar& gamma_star);

/// Bi-level epsilon-equilibrium test: the follower is checked against its
/// analytic best response given the leader row; the leader is checked against
/// single-carrier deviations on `grid_points_per_carrier` log-spaced powers
/// per carrier, each evaluated with the follower's response re-solved.
bool epsilon_ne_check(const PowerAllocation& alloc, const ChannelRealization& gains,
                      const EfficiencyModel& model, const GammaStar& gamma_star,
                      double epsilon, int grid_points_per_carrier = 200);

/// Brute-force grid for validating stackelberg_solve: enumerates leader
/// carrier x log-spaced leader power, applies the analytic follower response
/// to each and keeps the utility-maximizing point. Powers span
/// [p_min_scale, p_max_scale] * sigma^2 / g_1^{B_1}.
struct OracleGrid {
  int points_per_decade = 200;
  double p_min_scale = 1e-6;
  double p_max_scale = 1e4;
};

EquilibriumOutcome oracle_stackelberg(const ChannelRealization& gains,
                                      const GameConfig& config,
                                      const GammaStar& gamma_star,
                                      const OracleGrid& grid,
                                      const std::vector<int>* carrier_subset = nullptr);

}  // namespace carriergame
