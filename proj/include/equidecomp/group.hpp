#pragma once

// The group generated by the four isometries of the real line
//   Id: x -> x,  T: x -> x + 2a,  R2: x -> 2 - x,  R2a: x -> 2a - x
// (a = alpha). Every element has the unique normal form x -> s*x + 2a*b + 2c
// with s = +-1 and integers b, c.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "equidecomp/algebra.hpp"

namespace equidecomp {

enum class Generator : std::uint8_t { Id, T, R2, R2a };

inline constexpr std::array<Generator, 4> kGenerators = {Generator::Id, Generator::T, Generator::R2,
                                                         Generator::R2a};

std::string_view to_string(Generator g);

struct GroupElement {
  int a = 1;          // +1 or -1
  std::int64_t b = 0;  // coefficient of 2*alpha
  std::int64_t c = 0;  // coefficient of 2

  static constexpr GroupElement identity() { return {1, 0, 0}; }

  friend constexpr bool operator==(const GroupElement&, const GroupElement&) = default;
  friend constexpr auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

std::string to_string(const GroupElement& g);

constexpr GroupElement element(Generator g) {
  switch (g) {
    case Generator::Id:
      return {1, 0, 0};
    case Generator::T:
      return {1, 1, 0};
    case Generator::R2:
      return {-1, 0, 1};
    case Generator::R2a:
      return {-1, 1, 0};
  }
  return {1, 0, 0};
}

/// g o h, i.e. apply h first.
constexpr GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return {g.a * h.a, g.a * h.b + g.b, g.a * h.c + g.c};
}

constexpr GroupElement inverse(const GroupElement& g) { return {g.a, -g.a * g.b, -g.a * g.c}; }

/// (a*x.u + 2c) + (a*x.v + 2b)*alpha.
AlgebraicPoint apply(const GroupElement& g, const AlgebraicPoint& x);

/// Composes a word so that w[0] is applied first: the result is w[n-1] o ... o w[0].
GroupElement word_to_element(std::span<const Generator> word);

inline constexpr int kDefaultMaxBallRadius = 10;

/// All elements representable by words of length <= radius, sorted by
/// normal form. Throws GroupError (BallTooLarge) above max_radius.
std::vector<GroupElement> enumerate_ball(int radius, int max_radius = kDefaultMaxBallRadius);

/// Whether x -> a*x + u + v*alpha lies in the group: iff u and v are both even integers.
bool is_member(int a, const Rational& u, const Rational& v);

}  // namespace equidecomp
