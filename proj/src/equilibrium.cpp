#include "carriergame/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "carriergame/errors.hpp"

namespace carriergame {

namespace {

// Relative power bump applied when the boundary value W wins. At the exact
// boundary power the follower is indifferent between the shared carrier and
// his second-best one; nudging the leader's power up makes the retreat the
// follower's unique best response at a negligible utility cost.
constexpr double kUniquenessMargin = 1e-9;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

EquilibriumOutcome finish_outcome(EquilibriumKind kind, PowerAllocation alloc,
                                  const ChannelRealization& gains,
                                  const EfficiencyModel& model,
                                  std::optional<WinningValue> winner,
                                  double epsilon = 0.0) {
  EquilibriumOutcome out;
  out.kind = kind;
  out.epsilon = epsilon;
  out.active_carriers = {alloc.active_carrier(0), alloc.active_carrier(1)};
  out.coordinated = out.active_carriers[0] && out.active_carriers[1] &&
                    *out.active_carriers[0] != *out.active_carriers[1];
  out.utilities = std::array<double, 2>{utility(alloc, gains, model, 0),
                                        utility(alloc, gains, model, 1)};
  out.alloc = std::move(alloc);
  out.winner = winner;
  return out;
}

}  // namespace

double utility(const PowerAllocation& alloc, const ChannelRealization& gains,
               const EfficiencyModel& model, int user) {
  const double total = alloc.total_power(user);
  if (!(total > 0.0))
    throw zero_power_error("utility: user transmits no power");
  double throughput = 0.0;
  for (int k = 0; k < alloc.num_carriers(); ++k) {
    if (alloc.power(user, k) > 0.0)
      throughput += model.f(sinr(gains, alloc, user, k));
  }
  return gains.rate(user) * throughput / total;
}

std::vector<double> follower_best_response(const std::vector<double>& leader_row,
                                           const ChannelRealization& gains,
                                           const GammaStar& gamma_star) {
  const int K = gains.num_carriers();
  if (static_cast<int>(leader_row.size()) != K)
    throw std::invalid_argument("follower_best_response: leader row has wrong length");

  int best = 0;
  double best_gain = -1.0;
  for (int k = 0; k < K; ++k) {
    const double h = gains.gain(1, k) /
                     (gains.noise_variance() + gains.gain(0, k) *
                                                   leader_row[static_cast<std::size_t>(k)]);
    if (h > best_gain) {
      best_gain = h;
      best = k;
    }
  }
  std::vector<double> row(static_cast<std::size_t>(K), 0.0);
  row[static_cast<std::size_t>(best)] = gamma_star.value / best_gain;
  return row;
}

LeaderCandidates leader_candidates(const ChannelRealization& gains,
                                   const GammaStar& gamma_star,
                                   const EfficiencyModel& model) {
  if (gains.best(0) != gains.best(1))
    throw std::invalid_argument("leader_candidates: users do not share a best carrier");
  if (!(gains.gamma_hat() > gamma_star.value))
    throw std::invalid_argument("leader_candidates: follower gap below gamma*");

  const double g = gamma_star.value;
  const double ghat = gains.gamma_hat();
  const double s2 = gains.noise_variance();
  const double r1 = gains.rate(0);
  const double g1b = gains.gain(0, gains.best(0));
  const double g1s = gains.gain(0, gains.second(0));

  LeaderCandidates c;
  c.beta_star = solve_beta_star(model, gamma_star, ghat);
  if (c.beta_star.exists()) {
    const double b = *c.beta_star.value;
    c.v = model.f(b) * (1.0 - g * b) * g1b * r1 / (b * s2 * (1.0 + g));
  } else {
    c.v = kNegInf;
  }
  c.w = model.f(ghat) * g1b * r1 / (ghat * s2);
  c.u = model.f(g) * g1s * r1 / (g * s2);
  c.v0 = model.f_prime_at_zero() * g1b * r1 / (s2 * (1.0 + g));
  return c;
}

EquilibriumOutcome stackelberg_solve(const ChannelRealization& gains,
                                     const GameConfig& config,
                                     const GammaStar& gamma_star, double epsilon) {
  const EfficiencyModel& model = config.model;
  const double g = gamma_star.value;
  const double s2 = gains.noise_variance();
  const int K = gains.num_carriers();
  const int b1 = gains.best(0);
  const int b2 = gains.best(1);
  const int s1c = gains.second(0);

  // The leader power is assigned in closed form; the follower row is always
  // derived through follower_best_response so the published profile is the
  // exact (bitwise) best response to the published leader row.
  PowerAllocation alloc = PowerAllocation::zeros(K);
  const auto respond = [&](WinningValue winner) {
    alloc.powers[1] = follower_best_response(alloc.powers[0], gains, gamma_star);
    return finish_outcome(EquilibriumKind::StackelbergExact, std::move(alloc), gains,
                          model, winner);
  };

  if (b1 != b2) {
    // Distinct best carriers: both users reach their unconstrained optimum.
    alloc.set_single(0, b1, g * s2 / gains.gain(0, b1));
    return respond(WinningValue::Split);
  }

  if (gains.gamma_hat() <= g) {
    // The follower's gap is small: the leader takes the shared best carrier at
    // its efficiency-optimal power and the follower retreats to second best.
    alloc.set_single(0, b1, g * s2 / gains.gain(0, b1));
    return respond(WinningValue::U);
  }

  const LeaderCandidates cand = leader_candidates(gains, gamma_star, model);

  // V0 only decides when it is the strict maximum; exact branches take
  // precedence V > W > U on ties.
  if (cand.v0 > cand.v && cand.v0 > cand.w && cand.v0 > cand.u) {
    // No exact equilibrium: the leader's value improves all the way down to
    // zero power. Halve from the efficiency-optimal power until the utility
    // is within epsilon of the supremum V0, additively and multiplicatively.
    if (!(epsilon > 0.0))
      throw std::invalid_argument("stackelberg_solve: degenerate branch needs epsilon > 0");
    const double target = std::max(cand.v0 - epsilon, cand.v0 / (1.0 + epsilon));
    double alpha = g * s2 / gains.gain(0, b1);
    PowerAllocation trial = PowerAllocation::zeros(K);
    for (int it = 0; it < 200; ++it) {
      trial.set_single(0, b1, alpha);
      trial.powers[1] = follower_best_response(trial.powers[0], gains, gamma_star);
      if (utility(trial, gains, model, 0) >= target) break;
      alpha *= 0.5;
    }
    return finish_outcome(EquilibriumKind::StackelbergEpsilon, std::move(trial), gains,
                          model, WinningValue::V0, epsilon);
  }

  if (cand.v >= cand.w && cand.v >= cand.u) {
    const double b = *cand.beta_star.value;
    alloc.set_single(0, b1, b * (1.0 + g) * s2 / (gains.gain(0, b1) * (1.0 - g * b)));
    return respond(WinningValue::V);
  }

  if (cand.w >= cand.u) {
    alloc.set_single(0, b1,
                     gains.gamma_hat() * s2 / gains.gain(0, b1) * (1.0 + kUniquenessMargin));
    return respond(WinningValue::W);
  }

  alloc.set_single(0, s1c, g * s2 / gains.gain(0, s1c));
  return respond(WinningValue::U);
}

EquilibriumOutcome nash_solve(const ChannelRealization& gains, const GameConfig& config,
                              const GammaStar& gamma_star) {
  const EfficiencyModel& model = config.model;
  const double g = gamma_star.value;
  const double s2 = gains.noise_variance();
  const int K = gains.num_carriers();
  const int b1 = gains.best(0);
  const int b2 = gains.best(1);

  PowerAllocation alloc = PowerAllocation::zeros(K);

  if (b1 != b2) {
    alloc.set_single(0, b1, g * s2 / gains.gain(0, b1));
    alloc.set_single(1, b2, g * s2 / gains.gain(1, b2));
    return finish_outcome(EquilibriumKind::NashExact, std::move(alloc), gains, model,
                          WinningValue::Split);
  }

  const double ratio1 = gains.best_second_ratio(0);
  const double ratio2 = gains.best_second_ratio(1);
  const bool hot1 = ratio1 > 1.0 + g;  // user would fight for the shared carrier
  const bool hot2 = ratio2 > 1.0 + g;

  if (hot1 != hot2 || (!hot1 && !hot2)) {
    // A split profile exists. When both are playable the user with the larger
    // ratio keeps the best carrier (ties toward user 1).
    int on_best;
    if (hot1 != hot2) {
      on_best = hot1 ? 0 : 1;
    } else {
      on_best = ratio1 >= ratio2 ? 0 : 1;
    }
    const int other = 1 - on_best;
    alloc.set_single(on_best, b1, g * s2 / gains.gain(on_best, b1));
    alloc.set_single(other, gains.second(other),
                     g * s2 / gains.gain(other, gains.second(other)));
    return finish_outcome(EquilibriumKind::NashExact, std::move(alloc), gains, model,
                          WinningValue::Split);
  }

  // Both users insist on the shared carrier. The mutual fixed point with both
  // SINRs at gamma* requires gamma* < 1; otherwise the required powers
  // diverge and no feasible same-carrier profile exists.
  if (g < 1.0) {
    alloc.set_single(0, b1, g * s2 / (gains.gain(0, b1) * (1.0 - g)));
    alloc.set_single(1, b2, g * s2 / (gains.gain(1, b2) * (1.0 - g)));
    return finish_outcome(EquilibriumKind::NashExact, std::move(alloc), gains, model,
                          WinningValue::SameCarrierNash);
  }

  EquilibriumOutcome out;
  out.kind = EquilibriumKind::NashInfeasible;
  out.alloc = PowerAllocation::zeros(K);
  out.utilities = std::nullopt;
  out.active_carriers = {std::nullopt, std::nullopt};
  out.coordinated = false;
  out.winner = WinningValue::SameCarrierNash;
  return out;
}

bool epsilon_ne_check(const PowerAllocation& alloc, const ChannelRealization& gains,
                      const EfficiencyModel& model, const GammaStar& gamma_star,
                      double epsilon, int grid_points_per_carrier) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon_ne_check: epsilon must be >= 0");

  // Follower side: exact best response to the fixed leader row.
  {
    const double u2 = utility(alloc, gains, model, 1);
    PowerAllocation dev = alloc;
    dev.powers[1] = follower_best_response(alloc.powers[0], gains, gamma_star);
    if ((1.0 + epsilon) * u2 < utility(dev, gains, model, 1)) return false;
  }

  // Leader side: single-carrier deviations on a log power grid, the follower
  // re-solved for each.
  const double u1 = utility(alloc, gains, model, 0);
  const double p_ref = gains.noise_variance() / gains.gain(0, gains.best(0));
  const double lo = std::log(1e-6 * p_ref);
  const double hi = std::log(1e4 * p_ref);
  PowerAllocation dev = PowerAllocation::zeros(gains.num_carriers());
  for (int k = 0; k < gains.num_carriers(); ++k) {
    for (int i = 0; i < grid_points_per_carrier; ++i) {
      const double p = std::exp(lo + (hi - lo) * i / (grid_points_per_carrier - 1));
      dev.set_single(0, k, p);
      dev.powers[1] = follower_best_response(dev.powers[0], gains, gamma_star);
      if ((1.0 + epsilon) * u1 < utility(dev, gains, model, 0)) return false;
    }
  }
  return true;
}

EquilibriumOutcome oracle_stackelberg(const ChannelRealization& gains,
                                      const GameConfig& config,
                                      const GammaStar& gamma_star,
                                      const OracleGrid& grid,
                                      const std::vector<int>* carrier_subset) {
  if (!(grid.p_min_scale > 0.0) || !(grid.p_max_scale > grid.p_min_scale))
    throw std::invalid_argument("oracle grid: bad power range");

  const EfficiencyModel& model = config.model;
  const int K = gains.num_carriers();
  const double p_ref = gains.noise_variance() / gains.gain(0, gains.best(0));
  const double decades = std::log10(grid.p_max_scale / grid.p_min_scale);
  const int steps = static_cast<int>(std::lround(decades * grid.points_per_decade));
  const double log_lo = std::log10(grid.p_min_scale * p_ref);

  std::vector<int> carriers;
  if (carrier_subset) {
    carriers = *carrier_subset;
  } else {
    carriers.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) carriers[static_cast<std::size_t>(k)] = k;
  }

  double best_u = kNegInf;
  PowerAllocation best_alloc = PowerAllocation::zeros(K);
  PowerAllocation trial = PowerAllocation::zeros(K);
  for (int k : carriers) {
    for (int i = 0; i <= steps; ++i) {
      const double p = std::pow(10.0, log_lo + decades * i / steps);
      trial.set_single(0, k, p);
      trial.powers[1] = follower_best_response(trial.powers[0], gains, gamma_star);
      const double u = utility(trial, gains, model, 0);
      if (u > best_u) {
        best_u = u;
        best_alloc = trial;
      }
    }
  }
  return finish_outcome(EquilibriumKind::StackelbergExact, std::move(best_alloc), gains,
                        model, std::nullopt);
}

}  // namespace carriergame
