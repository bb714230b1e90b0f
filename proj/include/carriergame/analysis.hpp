#pragma once

#include <optional>

#include "carriergame/channel.hpp"
#include "carriergame/equilibrium.hpp"

namespace carriergame {

/// Closed-form ceiling on the probability that hierarchy fails to separate
/// the users: (1 + g) B(1 + g, K) with B the Beta function.
struct CoordinationBound {
  int num_carriers = 0;
  double gamma_star = 0.0;
  double bound = 0.0;
};

/// True iff both users share the best carrier and each user's best gain
/// exceeds (1 + gamma*) times its second best (boundary included). Inside
/// this region the simultaneous-move game admits no split profile.
bool no_coordination_region(const ChannelRealization& gains, const GammaStar& gamma_star);

/// (1 + g) B(1 + g, K), evaluated through log-Gamma. Decreasing in K and
/// equal to 1 at K = 1.
CoordinationBound no_coordination_bound(int num_carriers, const GammaStar& gamma_star);

/// Exact probability of no_coordination_region under i.i.d. unit-mean
/// exponential gains. With q = P(best >= (1+g) second) = K * bound the two
/// independent per-user events and the shared-best-carrier requirement give
/// K (q/K)^2 = K * bound^2. Note this is strictly below the bound above,
/// which equals the probability that the users share a best carrier and the
/// *follower alone* has a large gap.
double no_coordination_region_probability(int num_carriers, const GammaStar& gamma_star);

/// log2(1 + g) * (1 - (1 + g) B(1 + g, K)): floor on the mean spectral
/// efficiency contributed by coordinated outcomes.
double spectral_efficiency_bound(int num_carriers, const GammaStar& gamma_star);

/// Per-user average of log2(1 + SINR) over the outcome's active carriers;
/// users without an active carrier contribute zero.
double realized_spectral_efficiency(const EquilibriumOutcome& outcome,
                                    const ChannelRealization& gains);

/// Solves the hierarchical game twice, once per role assignment, and reports
/// whether player 1 earns at least as much leading as following. Throws
/// role_equilibrium_missing unless both role assignments give an exact
/// equilibrium.
bool leader_prefers_leading(const ChannelRealization& gains, const GameConfig& config,
                            const GammaStar& gamma_star);

/// Social-welfare summary of a matched pair of outcomes.
struct WelfareReport {
  double sw_stackelberg = 0.0;
  std::optional<double> sw_nash;       // absent when the Nash outcome carries no utilities
  double sw_upper = 0.0;               // sum of the two per-user maxima
  std::optional<double> ratio_vs_nash; // max(1, sw_nash / sw_stackelberg)
  double ratio_vs_max = 0.0;           // sw_upper / sw_stackelberg, >= 1
};

WelfareReport welfare_report(const ChannelRealization& gains,
                             const EquilibriumOutcome& nash_outcome,
                             const EquilibriumOutcome& stackelberg_outcome,
                             const GameConfig& config, const GammaStar& gamma_star);

}  // namespace carriergame
