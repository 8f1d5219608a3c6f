#pragma once

#include <cstdint>
#include <random>

namespace gdof {

/// Deterministic random stream. Streams derived from the same master seed
/// with different ids are independent, so work split across threads draws
/// the same numbers regardless of the worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t master_seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (engine_() >> 63) != 0; }
  double normal();

  /// Magnitude uniform on [lo, hi] with an independent equiprobable sign.
  /// Density is 1 / (2 (hi - lo)) on each branch.
  double signed_magnitude(double lo, double hi) {
    const double m = uniform(lo, hi);
    return coin() ? -m : m;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gdof
