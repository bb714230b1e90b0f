#include "carriergame/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "carriergame/rng.hpp"

namespace carriergame {

void GameConfig::validate() const {
  if (num_carriers < 2) throw std::invalid_argument("config: need at least 2 carriers");
  if (!(noise_variance > 0.0)) throw std::invalid_argument("config: noise variance must be positive");
  if (!(rates[0] > 0.0) || !(rates[1] > 0.0))
    throw std::invalid_argument("config: rates must be positive");
  if (!(theta >= 0.0) || !(theta <= 1.0))
    throw std::invalid_argument("config: theta must lie in [0, 1]");
}

ChannelRealization ChannelRealization::from_gains(std::array<std::vector<double>, 2> gains,
                                                  double noise_variance,
                                                  std::array<double, 2> rates) {
  if (gains[0].size() != gains[1].size() || gains[0].size() < 2)
    throw std::invalid_argument("gains: need two rows of K >= 2 entries");
  if (!(noise_variance > 0.0)) throw std::invalid_argument("gains: noise variance must be positive");

  ChannelRealization r;
  r.gains_ = std::move(gains);
  r.noise_variance_ = noise_variance;
  r.rates_ = rates;

  for (int n = 0; n < 2; ++n) {
    const auto& row = r.gains_[static_cast<std::size_t>(n)];
    int best = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!(row[k] > 0.0)) throw std::invalid_argument("gains: entries must be strictly positive");
      if (row[k] > row[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
    }
    int second = best == 0 ? 1 : 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (static_cast<int>(k) == best) continue;
      if (row[k] > row[static_cast<std::size_t>(second)]) second = static_cast<int>(k);
    }
    r.best_[static_cast<std::size_t>(n)] = best;
    r.second_[static_cast<std::size_t>(n)] = second;
  }
  const double b2 = r.gain(1, r.best(1));
  const double s2 = r.gain(1, r.second(1));
  r.gamma_hat_ = (b2 - s2) / s2;
  return r;
}

ChannelRealization ChannelRealization::swapped_roles() const {
  return from_gains({gains_[1], gains_[0]}, noise_variance_, {rates_[1], rates_[0]});
}

ChannelRealization sample_channels(const GameConfig& config, std::uint64_t seed,
                                   std::uint64_t stream, std::uint64_t trial) {
  config.validate();
  TrialRng rng(seed, stream, trial);

  const double wc = std::sqrt(config.theta);
  const double wz = std::sqrt(1.0 - config.theta);
  // Complex standard Gaussian: each component N(0, 1/2) so E|h|^2 = 1.
  const double comp = std::sqrt(0.5);

  std::array<std::vector<double>, 2> gains;
  gains[0].resize(static_cast<std::size_t>(config.num_carriers));
  gains[1].resize(static_cast<std::size_t>(config.num_carriers));
  for (int k = 0; k < config.num_carriers; ++k) {
    const auto [c_re, c_im] = rng.normal_pair();
    const auto [z1_re, z1_im] = rng.normal_pair();
    const auto [z2_re, z2_im] = rng.normal_pair();
    const double h1_re = comp * (wc * c_re + wz * z1_re);
    const double h1_im = comp * (wc * c_im + wz * z1_im);
    const double h2_re = comp * (wc * c_re + wz * z2_re);
    const double h2_im = comp * (wc * c_im + wz * z2_im);
    gains[0][static_cast<std::size_t>(k)] = h1_re * h1_re + h1_im * h1_im;
    gains[1][static_cast<std::size_t>(k)] = h2_re * h2_re + h2_im * h2_im;
  }
  return ChannelRealization::from_gains(std::move(gains), config.noise_variance,
                                        config.rates);
}

ChannelRealization sample_channels(const GameConfig& config, std::uint64_t seed,
                                   std::uint64_t trial) {
  return sample_channels(config, seed, 0, trial);
}

double effective_gain(const ChannelRealization& gains, double opponent_power,
                      int user, int carrier) {
  const int other = 1 - user;
  return gains.gain(user, carrier) /
         (gains.noise_variance() + gains.gain(other, carrier) * opponent_power);
}

double sinr(const ChannelRealization& gains, const PowerAllocation& alloc,
            int user, int carrier) {
  const int other = 1 - user;
  return effective_gain(gains, alloc.power(other, carrier), user, carrier) *
         alloc.power(user, carrier);
}

}  // namespace carriergame
