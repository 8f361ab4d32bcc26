#pragma once

#include <cstdint>
#include <random>

#include "equidecomp/algebra.hpp"

namespace equidecomp {

// std::mt19937_64's output sequence is fixed by the standard; the
// distributions in <random> are not, so bounded draws are done here.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % bound;
}

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_between(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// Independent stream seed for item `index` of a run seeded with `seed` (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::int64_t kDefaultMaxDenominator = 1'000'000;

/// A rational in [0, 1] with denominator at most max_den.
inline Rational random_unit_rational(Rng& rng, std::int64_t max_den = kDefaultMaxDenominator) {
  const std::int64_t den = uniform_between(rng, 1, max_den);
  const std::int64_t num = uniform_between(rng, 0, den);
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

}  // namespace equidecomp
