// Reproducible random streams.
//
// Engine: std::mt19937_64 (the 64-bit Mersenne Twister, a twisted GFSR whose
// constants are fixed by the C++ standard, so sequences are identical on
// every conforming platform). Each stream is seeded with
//   splitmix64(master_seed + 0x9E3779B97F4A7C15 * (stream_id + 1)).
// Uniform doubles use the top 53 bits: (x >> 11) * 2^-53, in [0, 1).
// std::uniform_real_distribution is avoided because its output is
// implementation-defined.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace eghz {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t master_seed, std::uint64_t stream_id = 0)
      : engine_(splitmix64(master_seed + 0x9E3779B97F4A7C15ull * (stream_id + 1))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exp(1) via inversion; 1 - u lies in (0, 1].
  double exponential() { return -std::log(1.0 - uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eghz
