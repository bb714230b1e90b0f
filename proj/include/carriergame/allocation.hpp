#pragma once

#include <array>
#include <optional>
#include <vector>

namespace carriergame {

/// Per-user, per-carrier transmit powers (watt). Every equilibrium produced
/// by the solvers has at most one strictly positive entry per user.
struct PowerAllocation {
  std::array<std::vector<double>, 2> powers;

  static PowerAllocation zeros(int num_carriers) {
    PowerAllocation a;
    a.powers[0].assign(static_cast<std::size_t>(num_carriers), 0.0);
    a.powers[1].assign(static_cast<std::size_t>(num_carriers), 0.0);
    return a;
  }

  int num_carriers() const { return static_cast<int>(powers[0].size()); }

  double power(int user, int carrier) const {
    return powers[static_cast<std::size_t>(user)][static_cast<std::size_t>(carrier)];
  }

  double total_power(int user) const {
    double s = 0.0;
    for (double p : powers[static_cast<std::size_t>(user)]) s += p;
    return s;
  }

  /// Lowest-index carrier with positive power, empty if the row is zero.
  std::optional<int> active_carrier(int user) const {
    const auto& row = powers[static_cast<std::size_t>(user)];
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] > 0.0) return static_cast<int>(k);
    return std::nullopt;
  }

  bool single_carrier_per_user() const {
    for (const auto& row : powers) {
      int positive = 0;
      for (double p : row)
        if (p > 0.0) ++positive;
      if (positive > 1) return false;
    }
    return true;
  }

  void set_single(int user, int carrier, double power) {
    auto& row = powers[static_cast<std::size_t>(user)];
    row.assign(row.size(), 0.0);
    row[static_cast<std::size_t>(carrier)] = power;
  }
};

}  // namespace carriergame
