// Shared test helpers: independent oracles the solver implementations are
// validated against, plus the custom efficiency curves used to reach branches
// the block-error family cannot.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "carriergame/analysis.hpp"
#include "carriergame/channel.hpp"
#include "carriergame/efficiency.hpp"
#include "carriergame/equilibrium.hpp"

namespace carriergame::testsupport {

// Independent route to gamma* for the block-error family: bisection on
// M x = e^x - 1 through expm1, never touching the solver's residual
// x f'(x) - f(x).
inline double oracle_gamma_star_expblock(int block_length, double tol = 1e-12) {
  const auto h = [block_length](double x) {
    return block_length * x - std::expm1(x);
  };
  double lo = 1e-8, hi = 60.0;
  if (!(h(lo) > 0.0) || !(h(hi) < 0.0)) throw std::logic_error("oracle bracket invalid");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Dense exhaustive maximization of f(x)(1 - x g)/x over the admissible
// interval; approximates beta* without any root finding.
struct DenseScanResult {
  bool found = false;
  double argmax = 0.0;
  double value = 0.0;
};

inline DenseScanResult oracle_beta_star_dense(const EfficiencyModel& model, double g,
                                              double gamma_hat, int points = 1000000) {
  DenseScanResult r;
  const double hi = std::min(gamma_hat / (1.0 + g * (1.0 + gamma_hat)), (1.0 - 1e-9) / g);
  if (!(hi > 0.0)) return r;
  const double lo = hi * 1e-9;
  const double log_lo = std::log(lo), log_hi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    const double x = std::exp(log_lo + (log_hi - log_lo) * i / (points - 1));
    const double v = model.f(x) * (1.0 - x * g) / x;
    if (!r.found || v > r.value) {
      r.found = true;
      r.argmax = x;
      r.value = v;
    }
  }
  return r;
}

inline double central_difference(const EfficiencyModel& model, double x, double h) {
  return (model.f(x + h) - model.f(x - h)) / (2.0 * h);
}

// Gentle sigmoid with gamma* < 1; keeps the same-carrier simultaneous-move
// fixed point feasible and lets the stationary-point candidate V win.
inline EfficiencyModel custom_soft_sigmoid() {
  return EfficiencyModel::custom(
      [](double x) { return x <= 0.0 ? 0.0 : std::pow(-std::expm1(-x), 1.5); },
      [](double x) {
        return x <= 0.0 ? 0.0 : 1.5 * std::exp(-x) * std::pow(-std::expm1(-x), 0.5);
      },
      0.0);
}

// Curve with a positive derivative at zero and f''(0) below 2 gamma* f'(0):
// the vanishing-power value V0 can strictly dominate, so only
// epsilon-equilibria exist.
inline EfficiencyModel custom_degenerate_curve() {
  constexpr double a = 0.6;
  return EfficiencyModel::custom(
      [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-(x + a * x * x)); },
      [](double x) {
        return x <= 0.0 ? 1.0 : (1.0 + 2.0 * a * x) * std::exp(-(x + a * x * x));
      },
      1.0);
}

// Closed-form conditions for "leading pays at least as much as following"
// with a shared best carrier, used to cross-check the direct two-role
// computation. Candidate values are normalized by rate/noise; the two role
// assignments use their own gap and stationary point.
inline bool role_preference_conditions(const ChannelRealization& ch,
                                       const EfficiencyModel& model,
                                       const GammaStar& gamma) {
  if (ch.best(0) != ch.best(1)) return true;  // distinct best carriers

  const double g = gamma.value;
  const double r1 = ch.best_second_ratio(0);
  const double r2 = ch.best_second_ratio(1);
  if (std::min(r1, r2) <= 1.0 + g) return true;  // one user has two good carriers

  const double u_shape = model.f(g) / g;
  const double g1b = ch.gain(0, ch.best(0)), g1s = ch.gain(0, ch.second(0));
  const double g2b = ch.gain(1, ch.best(1)), g2s = ch.gain(1, ch.second(1));
  const double ghat2 = r2 - 1.0;  // follower gap when player 1 leads
  const double ghat1 = r1 - 1.0;  // follower gap when player 2 leads

  const BetaStar b2 = solve_beta_star(model, gamma, ghat2);
  const BetaStar b1 = solve_beta_star(model, gamma, ghat1);
  const double neg = -std::numeric_limits<double>::infinity();
  const auto v_shape = [&](const BetaStar& b) {
    if (!b.exists()) return neg;
    const double x = *b.value;
    return model.f(x) * (1.0 - g * x) / (x * (1.0 + g));
  };

  // Player 1 leading: candidate values on his scale.
  const double v1 = b2.exists() ? v_shape(b2) * g1b : neg;
  const double w1 = model.f(ghat2) / ghat2 * g1b;
  const double u1 = u_shape * g1s;
  // Player 2 leading: candidate values on his scale (rate cancels).
  const double v2 = b1.exists() ? v_shape(b1) * g2b : neg;
  const double w2 = model.f(ghat1) / ghat1 * g2b;
  const double u2 = u_shape * g2s;
  // Player 1's follower payoff when player 2's stationary-point branch wins.
  const double follow_under_v2 =
      b1.exists() ? u_shape * g1b * (1.0 - g * *b1.value) / (1.0 + *b1.value) : neg;

  const bool c3 = w1 >= std::max(u1, v1) && w2 >= std::max(u2, v2);
  const bool c4 = v1 >= std::max(u1, w1) && w2 >= std::max(u2, v2);
  const bool c5 = u1 >= std::max(w1, v1) && v2 >= std::max(u2, w2) && b1.exists() &&
                  r1 <= (1.0 + *b1.value) / (1.0 - g * *b1.value);
  const bool c6 = w1 >= std::max(u1, follow_under_v2) && v2 >= std::max(u2, w2);
  // Two further sufficient clauses complete the characterization for curves
  // where the stationary-point branch can win in both role assignments, and
  // for the exact tie between retreating as leader and being pushed to the
  // second-best carrier as follower.
  const bool c7 =
      v1 >= std::max(u1, w1) && v2 >= std::max(u2, w2) && v1 >= follow_under_v2;
  const bool c8 = u1 >= std::max(v1, w1) && w2 >= std::max(u2, v2);
  return c3 || c4 || c5 || c6 || c7 || c8;
}

}  // namespace carriergame::testsupport
