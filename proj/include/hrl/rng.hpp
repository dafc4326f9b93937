#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hrl {

/// splitmix64 finalizer; also the mixing step of child-seed derivation.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for one experiment: hash(root, experiment id).  Independent of
/// the order in which experiments run.
std::uint64_t child_seed(std::uint64_t root, std::string_view experiment);
std::uint64_t child_seed(std::uint64_t root, std::uint64_t index);

/// Deterministic stream with platform-independent real conversion
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hrl
