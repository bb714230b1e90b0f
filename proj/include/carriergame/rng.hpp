#pragma once

#include <cstdint>
#include <utility>

namespace carriergame {

/// Counter-keyed random stream. The state is derived by mixing
/// (seed, stream, trial), so any trial of any sweep point can be generated
/// independently and in parallel without sharing generator state. Uses the
/// SplitMix64 mixer; uniforms and normals are produced with explicit
/// arithmetic (no std::*_distribution) so a given build yields identical
/// streams regardless of standard library.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

  std::uint64_t next_u64();

  /// Uniform double in (0, 1].
  double uniform();

  /// Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair();

 private:
  std::uint64_t state_;
};

}  // namespace carriergame
