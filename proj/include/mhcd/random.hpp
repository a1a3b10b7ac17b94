/// @file
/// Seeded random source with platform-independent draws.

#pragma once

#include <cstdint>
#include <random>

namespace mhcd {

/// mt19937_64 is fully specified by the standard; the distributions below are
/// implemented here rather than taken from <random> so that a seed yields the
/// same sequence on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t index(std::uint64_t n) {
    // Lemire's multiply-shift with rejection.
    __extension__ typedef unsigned __int128 Wide;
    Wide product = static_cast<Wide>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        product = static_cast<Wide>(engine_()) * n;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform real in (0, 1], safe to take the logarithm of.
  double uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mhcd
