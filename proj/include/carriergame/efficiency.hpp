#pragma once

#include <functional>
#include <optional>

namespace carriergame {

/// Packet-success curve f mapping SINR to a success probability.
/// Requirements: f(0) = 0, f nondecreasing, 0 <= f(x) < 1 for finite x.
/// The canonical form is the block-error model f(x) = (1 - e^{-x})^M for a
/// block length of M > 1 bits; arbitrary curves can be supplied through
/// custom() together with their derivative.
class EfficiencyModel {
 public:
  static EfficiencyModel exp_block(int block_length);
  static EfficiencyModel custom(std::function<double(double)> f,
                                std::function<double(double)> f_prime,
                                double f_prime_at_zero);

  double f(double x) const;
  double f_prime(double x) const;

  /// Right derivative at 0. Zero for the block-error family.
  double f_prime_at_zero() const { return f_prime_at_zero_; }

  bool is_exp_block() const { return block_length_ > 0; }
  int block_length() const { return block_length_; }

  /// Samples a grid and checks f(0) = 0, monotonicity and range. The default
  /// cap stays below the point where 1 - e^{-x} saturates to 1 in double
  /// precision. Throws std::invalid_argument on the first violated property.
  void validate(int grid_points = 256, double x_max = 32.0) const;

 private:
  EfficiencyModel() = default;

  int block_length_ = 0;  // 0 means custom curve
  std::function<double(double)> f_;
  std::function<double(double)> f_prime_;
  double f_prime_at_zero_ = 0.0;
};

/// SINR at which f(x)/x is maximal; the root of x f'(x) = f(x) together with
/// the residual of that equation at the returned point.
struct GammaStar {
  double value = 0.0;
  double residual = 0.0;
};

/// Operating SINR of a transmitter that accepts interference from a
/// best-responding opponent on the same carrier: root of
/// (x - x^2 g) f'(x) = f(x) maximizing f(x)(1 - x g)/x, where g is the
/// gamma-star value. `value` is empty when the equation has no positive
/// solution inside the admissible interval.
struct BetaStar {
  std::optional<double> value;
  double objective = 0.0;  // f(b)(1 - b g)/b at the root, when present
  double residual = 0.0;   // (b - b^2 g) f'(b) - f(b), when present

  bool exists() const { return value.has_value(); }
};

/// Solves x f'(x) = f(x) on (0, 745] by a sign-change scan plus bisection to
/// an interval of 1e-12. Throws no_root_error when no bracket is found.
GammaStar solve_gamma_star(const EfficiencyModel& model);

/// Solves (x - x^2 g) f'(x) = f(x) on
/// (0, min(gamma_hat / (1 + g (1 + gamma_hat)), (1 - 1e-9)/g)] by a
/// 10^4-point log-spaced sign-change scan, refining every bracket by
/// bisection and keeping the root with the largest f(x)(1 - x g)/x.
BetaStar solve_beta_star(const EfficiencyModel& model, const GammaStar& gamma_star,
                         double gamma_hat);

/// True when f'(0+) = 0, which rules out the degenerate leader case and
/// guarantees an exact equilibrium.
bool existence_guaranteed(const EfficiencyModel& model, const GammaStar& gamma_star);

}  // namespace carriergame
