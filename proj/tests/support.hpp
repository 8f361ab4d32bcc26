#pragma once

// Shared fixtures and hand-rolled generators for the property tests.

#include <array>
#include <cstdint>
#include <random>

#include "equidecomp/algebra.hpp"
#include "equidecomp/random.hpp"

namespace testing_support {

using namespace equidecomp;

inline const std::array<AlphaSpec, 3> kAlphas{{
    {-1, 1, 2, 1},  // sqrt2 - 1
    {-1, 1, 3, 1},  // sqrt3 - 1
    {-1, 1, 5, 2},  // (sqrt5 - 1)/2
}};

inline Rational rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational random_rational(Rng& rng, std::int64_t span, std::int64_t max_den) {
  const std::int64_t den = uniform_between(rng, 1, max_den);
  const std::int64_t num = uniform_between(rng, -span * den, span * den);
  return rational(static_cast<long>(num), static_cast<long>(den));
}

inline AlgebraicPoint random_point(Rng& rng, std::int64_t span = 4, std::int64_t max_den = 50) {
  return {random_rational(rng, span, max_den), random_rational(rng, span, max_den)};
}

}  // namespace testing_support
