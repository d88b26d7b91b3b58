#pragma once

#include <cstdint>

#include "maxcov/point.hpp"
#include "maxcov/rational.hpp"

namespace maxcov {

/// splitmix64, bit-exact. State advances by the golden-gamma increment
/// 0x9E3779B97F4A7C15; output is the two-round mix of the new state. This is
/// the single PRNG behind every seeded run, so point sets are reproducible
/// from the seed alone in any reimplementation.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

/// Rational in [−10, 10] with denominator in [1, 10]: numerator = next() mod
/// 21 − 10, denominator = next() mod 10 + 1. Small magnitudes keep exact
/// arithmetic cheap while exercising every sign.
inline Rational random_rational(SplitMix64& rng) {
  const long long num = static_cast<long long>(rng.next() % 21u) - 10;
  const long long den = static_cast<long long>(rng.next() % 10u) + 1;
  return Rational(num, den);
}

inline Point random_point(SplitMix64& rng) {
  Point p;
  for (int i = 0; i < 4; ++i) p[i] = random_rational(rng);
  return p;
}

}  // namespace maxcov
