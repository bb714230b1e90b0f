#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "carriergame/allocation.hpp"
#include "carriergame/efficiency.hpp"

namespace carriergame {

/// Static game parameters: number of carriers, noise power, per-user rates,
/// the inter-user fading correlation and the efficiency curve.
struct GameConfig {
  int num_carriers = 4;                    // K >= 2
  double noise_variance = 0.1;             // sigma^2 (watt); SNR = 1/sigma^2
  std::array<double, 2> rates = {1e6, 1e6};  // bit/s
  double theta = 0.0;                      // in [0, 1]
  EfficiencyModel model = EfficiencyModel::exp_block(100);

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// One fading draw: the 2 x K power gains together with the noise variance
/// and rates they were drawn under, plus the per-user best/second-best
/// carrier indices and the follower's best-to-second relative gain gap.
class ChannelRealization {
 public:
  /// Builds from explicit gains (all strictly positive). Ties in the carrier
  /// ordering are broken toward the lower index.
  static ChannelRealization from_gains(std::array<std::vector<double>, 2> gains,
                                       double noise_variance,
                                       std::array<double, 2> rates);

  int num_carriers() const { return static_cast<int>(gains_[0].size()); }
  double gain(int user, int carrier) const {
    return gains_[static_cast<std::size_t>(user)][static_cast<std::size_t>(carrier)];
  }
  const std::vector<double>& row(int user) const {
    return gains_[static_cast<std::size_t>(user)];
  }
  double noise_variance() const { return noise_variance_; }
  double rate(int user) const { return rates_[static_cast<std::size_t>(user)]; }

  /// Index of user n's largest gain.
  int best(int user) const { return best_[static_cast<std::size_t>(user)]; }
  /// Index of user n's second-largest gain.
  int second(int user) const { return second_[static_cast<std::size_t>(user)]; }
  /// g_n^{B_n} / g_n^{S_n}.
  double best_second_ratio(int user) const {
    return gain(user, best(user)) / gain(user, second(user));
  }
  /// (g_2^{B_2} - g_2^{S_2}) / g_2^{S_2}, the follower's relative gap.
  double gamma_hat() const { return gamma_hat_; }

  /// Same draw with the two users' rows (and rates) exchanged, so that the
  /// original follower can be solved in the leader role.
  ChannelRealization swapped_roles() const;

 private:
  std::array<std::vector<double>, 2> gains_;
  double noise_variance_ = 0.0;
  std::array<double, 2> rates_ = {0.0, 0.0};
  std::array<int, 2> best_ = {0, 0};
  std::array<int, 2> second_ = {0, 0};
  double gamma_hat_ = 0.0;
};

/// Draws unit-mean exponential power gains with inter-user correlation theta.
///
/// Construction: per carrier k draw independent complex standard Gaussians
/// c_k, z_{1,k}, z_{2,k} and set h_{n,k} = sqrt(theta) c_k +
/// sqrt(1-theta) z_{n,k}, g_n^k = |h_{n,k}|^2. theta = 0 gives gains i.i.d.
/// across users, theta = 1 gives both users bitwise-identical fading, and the
/// marginals are exponential(1) for every theta. Deterministic in
/// (seed, stream, trial).
ChannelRealization sample_channels(const GameConfig& config, std::uint64_t seed,
                                   std::uint64_t stream, std::uint64_t trial);

/// Single-stream convenience overload (stream = 0).
ChannelRealization sample_channels(const GameConfig& config, std::uint64_t seed,
                                   std::uint64_t trial);

/// SINR per unit transmit power on a carrier: g_n^k / (sigma^2 + g_m^k p_m^k).
double effective_gain(const ChannelRealization& gains, double opponent_power,
                      int user, int carrier);

/// Received SINR of `user` on `carrier` under `alloc`. Computed as
/// effective_gain(...) * own power so the two quantities agree bitwise.
double sinr(const ChannelRealization& gains, const PowerAllocation& alloc,
            int user, int carrier);

}  // namespace carriergame
