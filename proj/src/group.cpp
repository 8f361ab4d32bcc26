#include "equidecomp/group.hpp"

#include <algorithm>
#include <set>

#include "equidecomp/errors.hpp"

namespace equidecomp {

namespace {

bool is_even_integer(const Rational& x) {
  return x.get_den() == 1 && mpz_even_p(x.get_num().get_mpz_t()) != 0;
}

}  // namespace

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::Id:
      return "Id";
    case Generator::T:
      return "T";
    case Generator::R2:
      return "R2";
    case Generator::R2a:
      return "R2a";
  }
  return "?";
}

std::string to_string(const GroupElement& g) {
  return "[" + std::to_string(g.a) + ", " + std::to_string(g.b) + ", " + std::to_string(g.c) + "]";
}

AlgebraicPoint apply(const GroupElement& g, const AlgebraicPoint& x) {
  Rational u = x.u();
  Rational v = x.v();
  if (g.a < 0) {
    u = -u;
    v = -v;
  }
  u += 2 * Rational(static_cast<long>(g.c));
  v += 2 * Rational(static_cast<long>(g.b));
  return {std::move(u), std::move(v)};
}

GroupElement word_to_element(std::span<const Generator> word) {
  GroupElement result = GroupElement::identity();
  for (Generator g : word) result = compose(element(g), result);
  return result;
}

std::vector<GroupElement> enumerate_ball(int radius, int max_radius) {
  if (radius < 0) throw GroupError("ball radius must be non-negative");
  if (radius > max_radius) {
    throw GroupError("BallTooLarge: radius " + std::to_string(radius) + " exceeds maximum " +
                     std::to_string(max_radius));
  }
  // Breadth-first over words: layer k holds elements first reached by a word of length k.
  std::set<GroupElement> seen{GroupElement::identity()};
  std::vector<GroupElement> frontier{GroupElement::identity()};
  for (int depth = 0; depth < radius; ++depth) {
    std::vector<GroupElement> next;
    for (const GroupElement& g : frontier) {
      for (Generator gen : kGenerators) {
        const GroupElement h = compose(element(gen), g);
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool is_member(int a, const Rational& u, const Rational& v) {
  if (a != 1 && a != -1) throw GroupError("sign must be +1 or -1");
  return is_even_integer(u) && is_even_integer(v);
}

}  // namespace equidecomp
