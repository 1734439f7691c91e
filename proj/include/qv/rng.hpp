#pragma once

#include <cstdint>

namespace qv::rng {

/// Stateless uniform generator: every (seed, index) pair maps to one double
/// in [0, 1) through the splitmix64 finalizer. Draws can be evaluated in any
/// order or in parallel and always agree with a sequential run.

inline uint64_t splitmix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double uniform(uint64_t seed, uint64_t index) {
  uint64_t z = splitmix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
  return double(z >> 11) * 0x1.0p-53;
}

}  // namespace qv::rng
