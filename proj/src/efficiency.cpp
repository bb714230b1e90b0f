#include "carriergame/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "carriergame/errors.hpp"

namespace carriergame {

namespace {

// Above this the curve is indistinguishable from 1 and e^x overflows.
constexpr double kXMax = 745.0;
constexpr double kBisectTol = 1e-12;
constexpr int kMaxBisect = 200;
// Keeps beta* strictly below 1/gamma* so 1 - gamma* beta* stays positive.
constexpr double kBetaMargin = 1e-9;

// Log-spaced grid scan for positive-to-negative crossings of `fn`, each
// refined by bisection. Exact zeros on the grid are absorbed into the
// bracket (the bisection lands on them); zero runs caused by underflow at
// the small-x end never open a bracket because no positive value precedes
// them.
template <typename F>
std::vector<double> descending_roots(F&& fn, double lo, double hi, int grid_points) {
  std::vector<double> roots;
  if (!(lo > 0.0) || !(hi > lo)) return roots;
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / (grid_points - 1);
  double pos_x = 0.0;
  bool have_pos = fn(lo) > 0.0;
  if (have_pos) pos_x = lo;
  for (int i = 1; i < grid_points; ++i) {
    const double x = (i == grid_points - 1) ? hi : std::exp(log_lo + step * i);
    const double fx = fn(x);
    if (fx > 0.0) {
      pos_x = x;
      have_pos = true;
    } else if (fx < 0.0 && have_pos) {
      double a = pos_x, b = x;
      for (int it = 0; it < kMaxBisect && (b - a) > kBisectTol; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = fn(mid);
        if (fm > 0.0) {
          a = mid;
        } else if (fm < 0.0) {
          b = mid;
        } else {
          a = b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
      have_pos = false;
    }
  }
  return roots;
}

}  // namespace

EfficiencyModel EfficiencyModel::exp_block(int block_length) {
  if (block_length < 2)
    throw std::invalid_argument("exp_block: block length must exceed 1");
  EfficiencyModel m;
  m.block_length_ = block_length;
  m.f_prime_at_zero_ = 0.0;
  return m;
}

EfficiencyModel EfficiencyModel::custom(std::function<double(double)> f,
                                        std::function<double(double)> f_prime,
                                        double f_prime_at_zero) {
  if (!f || !f_prime) throw std::invalid_argument("custom: curve callbacks required");
  if (f_prime_at_zero < 0.0)
    throw std::invalid_argument("custom: derivative at zero must be nonnegative");
  EfficiencyModel m;
  m.f_ = std::move(f);
  m.f_prime_ = std::move(f_prime);
  m.f_prime_at_zero_ = f_prime_at_zero;
  return m;
}

double EfficiencyModel::f(double x) const {
  if (block_length_ > 0) {
    if (x <= 0.0) return 0.0;
    // 1 - e^{-x} through expm1 keeps small arguments accurate.
    return std::pow(-std::expm1(-x), block_length_);
  }
  return f_(x);
}

double EfficiencyModel::f_prime(double x) const {
  if (block_length_ > 0) {
    if (x <= 0.0) return 0.0;
    return block_length_ * std::exp(-x) *
           std::pow(-std::expm1(-x), block_length_ - 1);
  }
  return f_prime_(x);
}

void EfficiencyModel::validate(int grid_points, double x_max) const {
  if (f(0.0) != 0.0) throw std::invalid_argument("efficiency curve: f(0) must be 0");
  double prev = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double x = x_max * static_cast<double>(i) / grid_points;
    const double y = f(x);
    if (!(y >= 0.0) || !(y < 1.0))
      throw std::invalid_argument("efficiency curve: range must be [0, 1)");
    if (y + 1e-15 < prev)
      throw std::invalid_argument("efficiency curve: must be nondecreasing");
    prev = std::max(prev, y);
  }
}

GammaStar solve_gamma_star(const EfficiencyModel& model) {
  const auto residual = [&](double x) { return x * model.f_prime(x) - model.f(x); };

  // f(x)/x is maximal where the residual crosses from + to -. Custom curves
  // may dip negative first (concave start), so keep every crossing and pick
  // the one with the best ratio.
  const auto roots = descending_roots(residual, 1e-9, kXMax, 2048);
  if (roots.empty())
    throw no_root_error("solve_gamma_star: no sign change on (0, 745]; curve not sigmoidal");

  double best = roots.front();
  double best_ratio = model.f(best) / best;
  for (double r : roots) {
    const double ratio = model.f(r) / r;
    if (ratio > best_ratio) {
      best = r;
      best_ratio = ratio;
    }
  }
  return GammaStar{best, residual(best)};
}

BetaStar solve_beta_star(const EfficiencyModel& model, const GammaStar& gamma_star,
                         double gamma_hat) {
  if (!(gamma_hat > 0.0)) throw std::invalid_argument("solve_beta_star: gamma_hat must be positive");
  const double g = gamma_star.value;
  const double hi =
      std::min(gamma_hat / (1.0 + g * (1.0 + gamma_hat)), (1.0 - kBetaMargin) / g);

  BetaStar out;
  if (!(hi > 0.0)) return out;

  // For the block-error family the shared positive prefactor
  // (1-e^{-x})^{M-1} e^{-x} is divided out, which avoids underflow at the
  // small-x end of the scan; signs and roots are unchanged.
  const bool eb = model.is_exp_block();
  const int m = model.block_length();
  const auto residual = [&](double x) {
    if (eb) return m * (x - x * x * g) - std::expm1(x);
    return (x - x * x * g) * model.f_prime(x) - model.f(x);
  };

  const auto roots = descending_roots(residual, hi * 1e-12, hi, 10000);
  if (roots.empty()) return out;

  const auto objective = [&](double x) { return model.f(x) * (1.0 - x * g) / x; };
  double best = roots.front();
  double best_obj = objective(best);
  for (double r : roots) {
    const double obj = objective(r);
    if (obj > best_obj) {
      best = r;
      best_obj = obj;
    }
  }
  out.value = best;
  out.objective = best_obj;
  out.residual = (best - best * best * g) * model.f_prime(best) - model.f(best);
  return out;
}

bool existence_guaranteed(const EfficiencyModel& model, const GammaStar& gamma_star) {
  (void)gamma_star;  // the guarantee only inspects the derivative at zero
  if (model.is_exp_block()) return true;
  return model.f_prime_at_zero() == 0.0;
}

}  // namespace carriergame
