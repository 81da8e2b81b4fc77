#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace stochwave {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the independent stream `index` derived from a base seed:
///   splitmix64(seed + 0x9E3779B97F4A7C15 * (index + 1)).
/// Monte Carlo trial t always runs on stream_seed(seed, t), so results do not
/// depend on how trials are scheduled across threads.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Deterministic random stream over std::mt19937_64.
///
/// Uniform and Gaussian variates are produced by explicit transforms rather
/// than the <random> distributions, whose output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform on the open interval (0, 1).
  double uniform_open();

  /// Standard normal via the Marsaglia polar method.
  double standard_normal();

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace stochwave
