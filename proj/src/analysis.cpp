#include "carriergame/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "carriergame/errors.hpp"

namespace carriergame {

bool no_coordination_region(const ChannelRealization& gains, const GammaStar& gamma_star) {
  if (gains.best(0) != gains.best(1)) return false;
  const double t = 1.0 + gamma_star.value;
  for (int n = 0; n < 2; ++n) {
    if (gains.gain(n, gains.best(n)) < t * gains.gain(n, gains.second(n))) return false;
  }
  return true;
}

CoordinationBound no_coordination_bound(int num_carriers, const GammaStar& gamma_star) {
  if (num_carriers < 1) throw std::invalid_argument("no_coordination_bound: K >= 1");
  if (num_carriers == 1)  // B(a, 1) = 1/a exactly
    return CoordinationBound{1, gamma_star.value, 1.0};
  const double a = 1.0 + gamma_star.value;
  const double log_beta =
      std::lgamma(a) + std::lgamma(static_cast<double>(num_carriers)) -
      std::lgamma(a + static_cast<double>(num_carriers));
  return CoordinationBound{num_carriers, gamma_star.value, a * std::exp(log_beta)};
}

double no_coordination_region_probability(int num_carriers, const GammaStar& gamma_star) {
  const double b = no_coordination_bound(num_carriers, gamma_star).bound;
  return static_cast<double>(num_carriers) * b * b;
}

double spectral_efficiency_bound(int num_carriers, const GammaStar& gamma_star) {
  const double b = no_coordination_bound(num_carriers, gamma_star).bound;
  return std::log2(1.0 + gamma_star.value) * (1.0 - b);
}

double realized_spectral_efficiency(const EquilibriumOutcome& outcome,
                                    const ChannelRealization& gains) {
  double total = 0.0;
  for (int n = 0; n < 2; ++n) {
    const auto carrier = outcome.active_carriers[static_cast<std::size_t>(n)];
    if (!carrier) continue;
    total += std::log2(1.0 + sinr(gains, outcome.alloc, n, *carrier));
  }
  return 0.5 * total;
}

bool leader_prefers_leading(const ChannelRealization& gains, const GameConfig& config,
                            const GammaStar& gamma_star) {
  constexpr double kEps = 1e-6;  // never consumed for curves with f'(0) = 0
  const EquilibriumOutcome as_leader = stackelberg_solve(gains, config, gamma_star, kEps);
  const EquilibriumOutcome as_follower =
      stackelberg_solve(gains.swapped_roles(), config, gamma_star, kEps);
  if (as_leader.kind != EquilibriumKind::StackelbergExact ||
      as_follower.kind != EquilibriumKind::StackelbergExact)
    throw role_equilibrium_missing("leader_prefers_leading: a role assignment lacks an exact equilibrium");
  // Exact ties are common (both roles can land on the same carrier/power
  // pair); compare with a rounding-level slack so they count as "not worse".
  return (*as_leader.utilities)[0] >= (*as_follower.utilities)[1] * (1.0 - 1e-12);
}

WelfareReport welfare_report(const ChannelRealization& gains,
                             const EquilibriumOutcome& nash_outcome,
                             const EquilibriumOutcome& stackelberg_outcome,
                             const GameConfig& config, const GammaStar& gamma_star) {
  if (!stackelberg_outcome.utilities)
    throw std::invalid_argument("welfare_report: hierarchical outcome lacks utilities");

  WelfareReport rep;
  rep.sw_stackelberg =
      (*stackelberg_outcome.utilities)[0] + (*stackelberg_outcome.utilities)[1];
  if (nash_outcome.utilities)
    rep.sw_nash = (*nash_outcome.utilities)[0] + (*nash_outcome.utilities)[1];

  const double g = gamma_star.value;
  rep.sw_upper = config.model.f(g) *
                 (gains.rate(0) * gains.gain(0, gains.best(0)) +
                  gains.rate(1) * gains.gain(1, gains.best(1))) /
                 (g * gains.noise_variance());

  if (rep.sw_nash)
    rep.ratio_vs_nash = std::max(1.0, *rep.sw_nash / rep.sw_stackelberg);
  rep.ratio_vs_max = rep.sw_upper / rep.sw_stackelberg;
  return rep;
}

}  // namespace carriergame
