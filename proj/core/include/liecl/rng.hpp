#pragma once

#include <cstdint>

namespace liecl {

/// splitmix64 generator.
///
/// The recurrence is fixed so that seeded coefficient streams can be
/// reproduced by any implementation:
///
///   state <- state + 0x9E3779B97F4A7C15
///   z <- state
///   z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z <- (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output <- z ^ (z >> 31)
///
/// The unit tests freeze the first outputs for seed 0 as reference
/// values.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform() - 1.0; }

private:
  std::uint64_t state_;
};

} // namespace liecl
