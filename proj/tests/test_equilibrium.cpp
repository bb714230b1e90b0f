#include <cmath>
#include <vector>

#include "doctest.h"

#include "carriergame/analysis.hpp"
#include "carriergame/equilibrium.hpp"
#include "carriergame/errors.hpp"
#include "carriergame/rng.hpp"
#include "support.hpp"

using namespace carriergame;
namespace ts = carriergame::testsupport;

namespace {

ChannelRealization make_gains(std::vector<double> row1, std::vector<double> row2,
                              double sigma2 = 1.0, double r1 = 1e6, double r2 = 1e6) {
  return ChannelRealization::from_gains({std::move(row1), std::move(row2)}, sigma2,
                                        {r1, r2});
}

GameConfig config_for(const ChannelRealization& ch, EfficiencyModel model) {
  GameConfig c;
  c.num_carriers = ch.num_carriers();
  c.noise_variance = ch.noise_variance();
  c.rates = {ch.rate(0), ch.rate(1)};
  c.model = std::move(model);
  return c;
}

const EfficiencyModel kBlock100 = EfficiencyModel::exp_block(100);
const GammaStar kGamma100 = solve_gamma_star(kBlock100);

GameConfig random_config(int carriers, double sigma2 = 0.1) {
  GameConfig c;
  c.num_carriers = carriers;
  c.noise_variance = sigma2;
  c.rates = {1e6, 1e6};
  c.theta = 0.0;
  c.model = kBlock100;
  return c;
}

}  // namespace

TEST_CASE("utility evaluation") {
  const double g = kGamma100.value;

  SUBCASE("single carrier at the efficiency-optimal power") {
    const ChannelRealization ch = make_gains({2.0, 0.5}, {0.7, 0.3});
    PowerAllocation a = PowerAllocation::zeros(2);
    a.set_single(0, 0, g * 1.0 / 2.0);
    const double expected = kBlock100.f(g) * 2.0 * 1e6 / (g * 1.0);
    CHECK(utility(a, ch, kBlock100, 0) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("doubling the power halves the power term") {
    const ChannelRealization ch = make_gains({2.0, 0.5}, {0.7, 0.3});
    PowerAllocation a = PowerAllocation::zeros(2);
    a.set_single(0, 0, 1.7);
    a.set_single(1, 0, 0.9);
    PowerAllocation doubled = a;
    doubled.set_single(0, 0, 3.4);
    const double s = sinr(ch, doubled, 0, 0);
    CHECK(utility(doubled, ch, kBlock100, 0) ==
          doctest::Approx(1e6 * kBlock100.f(s) / 3.4).epsilon(1e-12));
  }

  SUBCASE("zero power row is an error") {
    const ChannelRealization ch = make_gains({2.0, 0.5}, {0.7, 0.3});
    const PowerAllocation a = PowerAllocation::zeros(2);
    CHECK_THROWS_AS(utility(a, ch, kBlock100, 0), zero_power_error);
  }
}

TEST_CASE("follower best response") {
  const double g = kGamma100.value;

  SUBCASE("idle leader: follower takes its best carrier at gamma* SINR") {
    const ChannelRealization ch = make_gains({1.0, 1.0, 1.0}, {0.5, 2.0, 1.0});
    const std::vector<double> idle(3, 0.0);
    const auto row = follower_best_response(idle, ch, kGamma100);
    CHECK(row[1] == doctest::Approx(g * 1.0 / 2.0).epsilon(1e-12));
    CHECK(row[0] == 0.0);
    CHECK(row[2] == 0.0);
  }

  SUBCASE("enough leader power on the shared carrier pushes the follower off") {
    const ChannelRealization ch = make_gains({3.0, 1.0}, {4.0, 1.0});
    // indifference power: sigma^2 (g2B - g2S) / (g1B g2S) = 1 * 3 / 3 = 1
    std::vector<double> leader{1.0 * 1.001, 0.0};
    auto row = follower_best_response(leader, ch, kGamma100);
    CHECK(row[0] == 0.0);
    CHECK(row[1] == doctest::Approx(g).epsilon(1e-12));

    leader[0] = 1.0 * 0.999;  // below the threshold: follower stays
    row = follower_best_response(leader, ch, kGamma100);
    CHECK(row[1] == 0.0);
    CHECK(row[0] > 0.0);
  }

  SUBCASE("beats every single-carrier grid alternative") {
    const GameConfig c = random_config(4);
    for (int t = 0; t < 40; ++t) {
      const ChannelRealization ch = sample_channels(c, 17, static_cast<std::uint64_t>(t));
      PowerAllocation a = PowerAllocation::zeros(4);
      a.set_single(0, t % 4, 0.01 + 0.05 * t);
      a.powers[1] = follower_best_response(a.powers[0], ch, kGamma100);
      const double best = utility(a, ch, kBlock100, 1);

      PowerAllocation dev = a;
      const double p_ref = ch.noise_variance() / ch.gain(1, ch.best(1));
      for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 200; ++i) {
          const double p = p_ref * std::pow(10.0, -6.0 + 10.0 * i / 199.0);
          dev.set_single(1, k, p);
          CHECK(utility(dev, ch, kBlock100, 1) <= best * (1.0 + 1e-9));
        }
      }
    }
  }
}

TEST_CASE("leader candidate values") {
  const double g = kGamma100.value;
  // shared best carrier 0, follower gap 30 > gamma*
  const ChannelRealization ch = make_gains({5.0, 1.0}, {31.0, 1.0});
  const LeaderCandidates cand = leader_candidates(ch, kGamma100, kBlock100);

  SUBCASE("each value equals an independent evaluation of its formula") {
    const double ghat = ch.gamma_hat();
    CHECK(ghat == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(cand.w ==
          doctest::Approx(kBlock100.f(ghat) * 5.0 * 1e6 / (ghat * 1.0)).epsilon(1e-12));
    CHECK(cand.u == doctest::Approx(kBlock100.f(g) * 1.0 * 1e6 / (g * 1.0)).epsilon(1e-12));
    // at this gap the stationary point lies outside its admissible cap
    CHECK_FALSE(cand.beta_star.exists());
    CHECK(cand.v == -std::numeric_limits<double>::infinity());
  }

  SUBCASE("V identity once the stationary point is admissible") {
    const ChannelRealization wide = make_gains({5.0, 1.0}, {201.0, 1.0});
    const LeaderCandidates cw = leader_candidates(wide, kGamma100, kBlock100);
    REQUIRE(cw.beta_star.exists());
    const double b = *cw.beta_star.value;
    CHECK(cw.v == doctest::Approx(kBlock100.f(b) * (1.0 - g * b) * 5.0 * 1e6 /
                                  (b * 1.0 * (1.0 + g)))
                      .epsilon(1e-12));
  }

  SUBCASE("block-error family: zero derivative at zero kills V0") {
    CHECK(cand.v0 == 0.0);
  }

  SUBCASE("the unconstrained shared-carrier optimum dominates V") {
    const double u_at_best = kBlock100.f(g) * 5.0 * 1e6 / (g * 1.0);
    CHECK(u_at_best >= cand.v);
  }
}

TEST_CASE("hierarchical solve: distinct best carriers") {
  const ChannelRealization ch = make_gains({3.0, 1.0}, {0.5, 2.0});
  const GameConfig c = config_for(ch, kBlock100);
  const double g = kGamma100.value;

  const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
  CHECK(st.kind == EquilibriumKind::StackelbergExact);
  CHECK(st.winner == WinningValue::Split);
  CHECK(st.coordinated);
  CHECK(st.alloc.power(0, 0) == doctest::Approx(g / 3.0).epsilon(1e-12));
  CHECK(st.alloc.power(1, 1) == doctest::Approx(g / 2.0).epsilon(1e-12));

  // identical to the simultaneous-move outcome
  const EquilibriumOutcome na = nash_solve(ch, c, kGamma100);
  CHECK(na.kind == EquilibriumKind::NashExact);
  CHECK(na.alloc.power(0, 0) == st.alloc.power(0, 0));
  CHECK(na.alloc.power(1, 1) == st.alloc.power(1, 1));
  CHECK((*na.utilities)[0] == (*st.utilities)[0]);
  CHECK((*na.utilities)[1] == (*st.utilities)[1]);
}

TEST_CASE("hierarchical solve: small follower gap (shared best carrier)") {
  // gap = 0.5 < gamma*: leader keeps the carrier at its optimum
  const ChannelRealization ch = make_gains({3.0, 1.0}, {1.5, 1.0});
  const GameConfig c = config_for(ch, kBlock100);
  const double g = kGamma100.value;

  const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
  CHECK(st.kind == EquilibriumKind::StackelbergExact);
  CHECK(st.winner == WinningValue::U);
  CHECK(st.coordinated);
  CHECK(st.alloc.power(0, 0) == doctest::Approx(g / 3.0).epsilon(1e-12));
  CHECK(st.alloc.power(1, 1) == doctest::Approx(g / 1.0).epsilon(1e-12));
  CHECK((*st.utilities)[0] ==
        doctest::Approx(kBlock100.f(g) * 3.0 * 1e6 / g).epsilon(1e-9));
}

TEST_CASE("hierarchical solve: boundary-power branch") {
  const ChannelRealization ch = make_gains({5.0, 1.0}, {31.0, 1.0});
  const GameConfig c = config_for(ch, kBlock100);
  const double g = kGamma100.value;
  const double ghat = 30.0;

  const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
  CHECK(st.kind == EquilibriumKind::StackelbergExact);
  CHECK(st.winner == WinningValue::W);
  CHECK(st.coordinated);
  CHECK(*st.active_carriers[0] == 0);
  CHECK(*st.active_carriers[1] == 1);
  CHECK(st.alloc.power(0, 0) ==
        doctest::Approx(ghat / 5.0 * (1.0 + 1e-9)).epsilon(1e-12));
  CHECK(st.alloc.power(1, 1) == doctest::Approx(g).epsilon(1e-12));

  // the follower row is exactly the best response to the published leader row
  const auto br = follower_best_response(st.alloc.powers[0], ch, kGamma100);
  CHECK(br == st.alloc.powers[1]);

  // utility sits just below the boundary value W
  const double w = kBlock100.f(ghat) * 5.0 * 1e6 / ghat;
  CHECK((*st.utilities)[0] <= w);
  CHECK((*st.utilities)[0] >= w * (1.0 - 1e-6));
}

TEST_CASE("hierarchical solve: retreat branch") {
  // strong second carrier for the leader: U = u* g1S beats W
  const ChannelRealization ch = make_gains({2.0, 1.0}, {31.0, 1.0});
  const GameConfig c = config_for(ch, kBlock100);
  const double g = kGamma100.value;

  const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
  CHECK(st.kind == EquilibriumKind::StackelbergExact);
  CHECK(st.winner == WinningValue::U);
  CHECK(st.coordinated);
  CHECK(*st.active_carriers[0] == 1);  // leader's second-best carrier
  CHECK(*st.active_carriers[1] == 0);  // follower keeps its best
  CHECK(st.alloc.power(0, 1) == doctest::Approx(g).epsilon(1e-12));
  CHECK(st.alloc.power(1, 0) == doctest::Approx(g / 31.0).epsilon(1e-12));
}

TEST_CASE("hierarchical solve: stationary-point branch with a soft curve") {
  const EfficiencyModel soft = ts::custom_soft_sigmoid();
  const GammaStar gs = solve_gamma_star(soft);
  REQUIRE(gs.value < 1.0);

  const ChannelRealization ch = make_gains({10.0, 1.0}, {10.0, 1.0});
  const GameConfig c = config_for(ch, soft);
  const EquilibriumOutcome st = stackelberg_solve(ch, c, gs, 1e-6);
  CHECK(st.kind == EquilibriumKind::StackelbergExact);
  CHECK(st.winner == WinningValue::V);
  CHECK_FALSE(st.coordinated);  // both users share carrier 0
  CHECK(*st.active_carriers[0] == 0);
  CHECK(*st.active_carriers[1] == 0);

  const LeaderCandidates cand = leader_candidates(ch, gs, soft);
  REQUIRE(cand.beta_star.exists());
  const double b = *cand.beta_star.value;
  CHECK(sinr(ch, st.alloc, 0, 0) == doctest::Approx(b).epsilon(1e-9));
  CHECK(sinr(ch, st.alloc, 1, 0) == doctest::Approx(gs.value).epsilon(1e-9));
  CHECK((*st.utilities)[0] == doctest::Approx(cand.v).epsilon(1e-9));

  // the shared-carrier stationary point is itself bi-level stable
  CHECK(epsilon_ne_check(st.alloc, ch, soft, gs, 1e-6));
}

TEST_CASE("hierarchical solve: degenerate branch yields an epsilon outcome") {
  const EfficiencyModel degen = ts::custom_degenerate_curve();
  const GammaStar gs = solve_gamma_star(degen);

  const ChannelRealization ch = make_gains({10.0, 1.0}, {3.0, 1.0});
  const GameConfig c = config_for(ch, degen);
  const LeaderCandidates cand = leader_candidates(ch, gs, degen);
  REQUIRE(cand.v0 > cand.v);
  REQUIRE(cand.v0 > cand.w);
  REQUIRE(cand.v0 > cand.u);

  const double eps = 0.01 * cand.v0;
  const EquilibriumOutcome st = stackelberg_solve(ch, c, gs, eps);
  CHECK(st.kind == EquilibriumKind::StackelbergEpsilon);
  CHECK(st.winner == WinningValue::V0);
  CHECK(st.epsilon == eps);
  CHECK((*st.utilities)[0] >= cand.v0 - eps);
  CHECK((*st.utilities)[0] >= cand.v0 / (1.0 + eps));
  CHECK((*st.utilities)[0] <= cand.v0);
  CHECK(epsilon_ne_check(st.alloc, ch, degen, gs, eps));
  CHECK_FALSE(existence_guaranteed(degen, gs));
}

TEST_CASE("simultaneous solve: selection rules") {
  const double g = kGamma100.value;

  SUBCASE("exactly one user insists on the shared carrier") {
    const ChannelRealization ch = make_gains({5.0, 1.0}, {31.0, 1.0});
    const GameConfig c = config_for(ch, kBlock100);
    // user 2's ratio 31 > 1+g, user 1's ratio 5 < 1+g
    const EquilibriumOutcome na = nash_solve(ch, c, kGamma100);
    CHECK(na.kind == EquilibriumKind::NashExact);
    CHECK(na.winner == WinningValue::Split);
    CHECK(na.coordinated);
    CHECK(*na.active_carriers[1] == 0);
    CHECK(*na.active_carriers[0] == 1);
    CHECK(na.alloc.power(1, 0) == doctest::Approx(g / 31.0).epsilon(1e-12));
    CHECK(na.alloc.power(0, 1) == doctest::Approx(g).epsilon(1e-12));
  }

  SUBCASE("both relaxed: larger ratio keeps the best carrier") {
    const ChannelRealization ch = make_gains({3.0, 1.0}, {6.0, 1.0});
    const GameConfig c = config_for(ch, kBlock100);
    const EquilibriumOutcome na = nash_solve(ch, c, kGamma100);
    CHECK(na.coordinated);
    CHECK(*na.active_carriers[1] == 0);  // ratio 6 beats 3
    CHECK(*na.active_carriers[0] == 1);
  }

  SUBCASE("ratio tie goes to user 1") {
    const ChannelRealization ch = make_gains({3.0, 1.0}, {6.0, 2.0});
    const GameConfig c = config_for(ch, kBlock100);
    const EquilibriumOutcome na = nash_solve(ch, c, kGamma100);
    CHECK(*na.active_carriers[0] == 0);
    CHECK(*na.active_carriers[1] == 1);
  }

  SUBCASE("contested carrier with gamma* > 1 is infeasible") {
    const ChannelRealization ch = make_gains({10.0, 1.0}, {10.0, 1.0});
    const GameConfig c = config_for(ch, kBlock100);
    const EquilibriumOutcome na = nash_solve(ch, c, kGamma100);
    CHECK(na.kind == EquilibriumKind::NashInfeasible);
    CHECK(na.winner == WinningValue::SameCarrierNash);
    CHECK_FALSE(na.coordinated);
    CHECK_FALSE(na.utilities.has_value());
    CHECK_FALSE(na.active_carriers[0].has_value());
  }
}

TEST_CASE("simultaneous solve: shared-carrier fixed point at gamma* = 1/2") {
  // block-error exponent chosen so that gamma* lands exactly on 1/2
  const double m = std::expm1(0.5) / 0.5;
  const EfficiencyModel half = EfficiencyModel::custom(
      [m](double x) { return x <= 0.0 ? 0.0 : std::pow(-std::expm1(-x), m); },
      [m](double x) {
        return x <= 0.0 ? 0.0 : m * std::exp(-x) * std::pow(-std::expm1(-x), m - 1.0);
      },
      0.0);
  const GammaStar gs = solve_gamma_star(half);
  REQUIRE(gs.value == doctest::Approx(0.5).epsilon(1e-10));

  const ChannelRealization ch = make_gains({1.0, 0.4}, {1.0, 0.4});
  const GameConfig c = config_for(ch, half);
  const EquilibriumOutcome na = nash_solve(ch, c, gs);
  CHECK(na.kind == EquilibriumKind::NashExact);
  CHECK(na.winner == WinningValue::SameCarrierNash);
  CHECK_FALSE(na.coordinated);
  CHECK(na.alloc.power(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(na.alloc.power(1, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sinr(ch, na.alloc, 0, 0) == doctest::Approx(gs.value).epsilon(1e-9));
  CHECK(sinr(ch, na.alloc, 1, 0) == doctest::Approx(gs.value).epsilon(1e-9));
}

TEST_CASE("epsilon equilibrium check") {
  const GameConfig c = random_config(4);

  SUBCASE("solver outcomes pass the bi-level test") {
    for (int t = 0; t < 30; ++t) {
      const ChannelRealization ch = sample_channels(c, 23, static_cast<std::uint64_t>(t));
      const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
      CHECK(epsilon_ne_check(st.alloc, ch, kBlock100, kGamma100, 1e-6));
    }
  }

  SUBCASE("a split outcome is exact: the test passes at epsilon = 0") {
    const ChannelRealization ch = make_gains({3.0, 1.0}, {0.5, 2.0});
    const GameConfig cc = config_for(ch, kBlock100);
    const EquilibriumOutcome st = stackelberg_solve(ch, cc, kGamma100, 1e-6);
    REQUIRE(st.winner == WinningValue::Split);
    CHECK(epsilon_ne_check(st.alloc, ch, kBlock100, kGamma100, 0.0));
  }

  SUBCASE("the follower row is its own best response, exactly") {
    for (int t = 0; t < 20; ++t) {
      const ChannelRealization ch = sample_channels(c, 29, static_cast<std::uint64_t>(t));
      const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
      CHECK(follower_best_response(st.alloc.powers[0], ch, kGamma100) ==
            st.alloc.powers[1]);
    }
  }

  SUBCASE("a clearly improvable profile fails") {
    const ChannelRealization ch = make_gains({3.0, 1.0, 0.5, 0.2}, {0.5, 2.0, 0.3, 0.1});
    PowerAllocation a = PowerAllocation::zeros(4);
    // leader vastly overshoots the efficiency-optimal power
    a.set_single(0, 0, 6.0 * kGamma100.value / 3.0);
    a.powers[1] = follower_best_response(a.powers[0], ch, kGamma100);
    CHECK_FALSE(epsilon_ne_check(a, ch, kBlock100, kGamma100, 0.05));
  }
}

TEST_CASE("grid oracle") {
  const GameConfig c = random_config(2);

  SUBCASE("distinct best carriers: grid optimum sits next to the closed form") {
    const ChannelRealization ch = make_gains({3.0, 1.0}, {0.5, 2.0}, 0.1);
    OracleGrid grid;
    grid.points_per_decade = 50;
    const EquilibriumOutcome o = oracle_stackelberg(ch, c, kGamma100, grid);
    CHECK(*o.active_carriers[0] == 0);
    const double p_star = kGamma100.value * 0.1 / 3.0;
    const double step = std::pow(10.0, 1.0 / 50.0);
    CHECK(o.alloc.power(0, 0) >= p_star / step);
    CHECK(o.alloc.power(0, 0) <= p_star * step);
  }

  SUBCASE("restricting to the two best leader carriers changes nothing material") {
    const GameConfig c4 = random_config(4);
    OracleGrid grid;
    grid.points_per_decade = 100;
    const double step_gain = std::pow(10.0, 1.0 / 100.0) - 1.0;
    for (int t = 0; t < 15; ++t) {
      const ChannelRealization ch = sample_channels(c4, 31, static_cast<std::uint64_t>(t));
      const EquilibriumOutcome full = oracle_stackelberg(ch, c4, kGamma100, grid);
      const std::vector<int> two_best{ch.best(0), ch.second(0)};
      const EquilibriumOutcome restricted =
          oracle_stackelberg(ch, c4, kGamma100, grid, &two_best);
      CHECK((*full.utilities)[0] - (*restricted.utilities)[0] <=
            (*full.utilities)[0] * step_gain);
    }
  }

  SUBCASE("a tenfold grid refinement moves the optimum by less than 0.1%") {
    const GameConfig c4 = random_config(4);
    OracleGrid coarse;
    OracleGrid fine;
    fine.points_per_decade = 2000;
    for (int t = 0; t < 5; ++t) {
      const ChannelRealization ch = sample_channels(c4, 37, static_cast<std::uint64_t>(t));
      const double a = (*oracle_stackelberg(ch, c4, kGamma100, coarse).utilities)[0];
      const double b = (*oracle_stackelberg(ch, c4, kGamma100, fine).utilities)[0];
      CHECK(std::abs(a - b) <= 0.001 * b);
    }
  }

  SUBCASE("closed form never trails the grid by more than 0.5%") {
    const GameConfig c4 = random_config(4);
    OracleGrid grid;
    for (int t = 0; t < 60; ++t) {
      const ChannelRealization ch = sample_channels(c4, 41, static_cast<std::uint64_t>(t));
      const double closed = (*stackelberg_solve(ch, c4, kGamma100, 1e-6).utilities)[0];
      const double gridu = (*oracle_stackelberg(ch, c4, kGamma100, grid).utilities)[0];
      CHECK(closed >= gridu * (1.0 - 0.005));
    }
  }
}

TEST_CASE("ratio-of-sums never beats the best ratio (mediant property)") {
  TrialRng rng(2024, 0, 0);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    double sa = 0, sb = 0, best = 0;
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] = -std::log(rng.uniform()) * 2.0;
      b[static_cast<std::size_t>(i)] = rng.uniform() + 1e-3;
      sa += a[static_cast<std::size_t>(i)];
      sb += b[static_cast<std::size_t>(i)];
      best = std::max(best, a[static_cast<std::size_t>(i)] / b[static_cast<std::size_t>(i)]);
    }
    CHECK(sa / sb <= best * (1.0 + 1e-12));
  }
  // equality holds exactly when all ratios agree
  const std::vector<double> b{0.5, 1.25, 3.0};
  double sa = 0, sb = 0;
  for (double x : b) {
    sa += 2.0 * x;
    sb += x;
  }
  CHECK(sa / sb == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("solver outcome invariants over random draws") {
  const GameConfig c = random_config(4);
  int exact_nash = 0;
  for (int t = 0; t < 2000; ++t) {
    const ChannelRealization ch = sample_channels(c, 57, static_cast<std::uint64_t>(t));
    const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
    CHECK(st.kind == EquilibriumKind::StackelbergExact);  // A1 curve: always exact
    CHECK(st.alloc.single_carrier_per_user());
    CHECK(st.coordinated ==
          (*st.active_carriers[0] != *st.active_carriers[1]));

    // transmitting follower sits exactly at gamma*
    const double fsinr = sinr(ch, st.alloc, 1, *st.active_carriers[1]);
    CHECK(std::abs(fsinr - kGamma100.value) <= 1e-9 * kGamma100.value);

    const EquilibriumOutcome na = nash_solve(ch, c, kGamma100);
    CHECK(na.alloc.single_carrier_per_user());
    if (na.kind == EquilibriumKind::NashExact) {
      ++exact_nash;
      // the leader never loses by moving first
      CHECK((*st.utilities)[0] >= (*na.utilities)[0] * (1.0 - 1e-12));
    }
  }
  CHECK(exact_nash > 1900);  // contested draws are rare at K = 4
}

TEST_CASE("rates scale utilities without moving the equilibrium") {
  const ChannelRealization slow = make_gains({5.0, 1.0}, {31.0, 1.0}, 1.0, 1e6, 1e6);
  const ChannelRealization fast = make_gains({5.0, 1.0}, {31.0, 1.0}, 1.0, 2e6, 3e6);
  GameConfig c = config_for(slow, kBlock100);
  const EquilibriumOutcome a = stackelberg_solve(slow, c, kGamma100, 1e-6);
  c.rates = {2e6, 3e6};
  const EquilibriumOutcome b = stackelberg_solve(fast, c, kGamma100, 1e-6);
  CHECK(a.winner == b.winner);
  CHECK(a.alloc.powers[0] == b.alloc.powers[0]);
  CHECK(a.alloc.powers[1] == b.alloc.powers[1]);
  CHECK((*b.utilities)[0] == doctest::Approx(2.0 * (*a.utilities)[0]).epsilon(1e-12));
  CHECK((*b.utilities)[1] == doctest::Approx(3.0 * (*a.utilities)[1]).epsilon(1e-12));
}

TEST_CASE("two-argument sampling is the zero-stream case") {
  const GameConfig c = random_config(5);
  const ChannelRealization a = sample_channels(c, 321, 17);
  const ChannelRealization b = sample_channels(c, 321, 0, 17);
  for (int n = 0; n < 2; ++n)
    for (int k = 0; k < 5; ++k) CHECK(a.gain(n, k) == b.gain(n, k));
}

TEST_CASE("follower payoff comparisons across the two games") {
  SUBCASE("shared carrier in both games: following pays more under hierarchy") {
    const EfficiencyModel soft = ts::custom_soft_sigmoid();
    const GammaStar gs = solve_gamma_star(soft);
    const ChannelRealization ch = make_gains({10.0, 1.0}, {10.0, 1.0});
    const GameConfig c = config_for(ch, soft);
    const EquilibriumOutcome st = stackelberg_solve(ch, c, gs, 1e-6);
    const EquilibriumOutcome na = nash_solve(ch, c, gs);
    REQUIRE(st.winner == WinningValue::V);
    REQUIRE(na.winner == WinningValue::SameCarrierNash);
    CHECK((*st.utilities)[1] > (*na.utilities)[1]);
  }

  SUBCASE("carrier swap case: the follower loses under hierarchy") {
    const ChannelRealization ch = make_gains({5.0, 1.0}, {31.0, 1.0});
    const GameConfig c = config_for(ch, kBlock100);
    const EquilibriumOutcome st = stackelberg_solve(ch, c, kGamma100, 1e-6);
    const EquilibriumOutcome na = nash_solve(ch, c, kGamma100);
    REQUIRE(st.winner == WinningValue::W);   // leader takes the best carrier
    REQUIRE(*na.active_carriers[1] == 0);    // simultaneous play gave it to the follower
    CHECK((*st.utilities)[1] < (*na.utilities)[1]);
  }
}
