#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <vector>

#include "equidecomp/errors.hpp"
#include "equidecomp/group.hpp"
#include "support.hpp"

using namespace equidecomp;

namespace {

// Independent evaluation: the affine map x -> a x + 2 alpha b + 2 c, tracked on
// the pair (u, v) of x = u + v alpha.
AlgebraicPoint evaluate(const GroupElement& g, const AlgebraicPoint& x) {
  return {Rational(g.a) * x.u() + Rational(2 * g.c), Rational(g.a) * x.v() + Rational(2 * g.b)};
}

// Every word of length <= radius, composed by explicit evaluation on two probe
// points (which determine an affine map of this form).
std::set<GroupElement> brute_force_ball(int radius) {
  std::set<GroupElement> out{GroupElement::identity()};
  std::vector<std::vector<Generator>> frontier{{}};
  for (int len = 1; len <= radius; ++len) {
    std::vector<std::vector<Generator>> next;
    for (const auto& word : frontier) {
      for (Generator gen : kGenerators) {
        auto w = word;
        w.push_back(gen);
        AlgebraicPoint zero(0);
        AlgebraicPoint one(1);
        for (Generator step : w) {
          zero = evaluate(element(step), zero);
          one = evaluate(element(step), one);
        }
        const Rational a = one.u() - zero.u();
        GroupElement g{static_cast<int>(a.get_num().get_si()), 0, 0};
        g.b = Rational(zero.v() / 2).get_num().get_si();
        g.c = Rational(zero.u() / 2).get_num().get_si();
        out.insert(g);
        next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Group, GeneratorsActAsStated) {
  const AlgebraicPoint x(testing_support::rational(1, 3), Rational(0));
  const AlgebraicPoint a = AlgebraicPoint::alpha();
  EXPECT_EQ(apply(element(Generator::Id), x), x);
  EXPECT_EQ(apply(element(Generator::T), x), x + a * Rational(2));
  EXPECT_EQ(apply(element(Generator::R2), x), AlgebraicPoint(2) - x);
  EXPECT_EQ(apply(element(Generator::R2a), x), a * Rational(2) - x);
}

TEST(Group, WordsApplyFirstGeneratorFirst) {
  const std::array<Generator, 2> tr{Generator::T, Generator::R2};
  EXPECT_EQ(word_to_element(tr), (GroupElement{-1, -1, 1}));
  const std::array<Generator, 2> rt{Generator::R2, Generator::T};
  EXPECT_EQ(word_to_element(rt), (GroupElement{-1, 1, 1}));
  EXPECT_EQ(word_to_element(std::span<const Generator>{}), GroupElement::identity());
  const AlgebraicPoint half = AlgebraicPoint::rational(testing_support::rational(1, 2));
  EXPECT_EQ(apply(word_to_element(tr), half),
            AlgebraicPoint::rational(testing_support::rational(3, 2)) - AlgebraicPoint::alpha() * Rational(2));
}

TEST(Group, ComposeAndInverseExamples) {
  const GroupElement t = element(Generator::T);
  EXPECT_EQ(compose(t, t), (GroupElement{1, 2, 0}));
  EXPECT_EQ(inverse(t), (GroupElement{1, -1, 0}));
  EXPECT_EQ(compose(element(Generator::R2), element(Generator::R2)), GroupElement::identity());
  EXPECT_EQ(compose(element(Generator::R2a), element(Generator::R2)), (GroupElement{1, 1, -1}));
}

TEST(Group, BallSizesMatchWordEnumeration) {
  // Frozen from brute_force_ball; recomputed here for small radii.
  const std::array<std::size_t, 9> expected{1, 4, 11, 23, 39, 59, 83, 111, 143};
  for (int r = 0; r <= 5; ++r) {
    const auto ball = enumerate_ball(r);
    const auto oracle = brute_force_ball(r);
    EXPECT_EQ(ball.size(), expected[static_cast<std::size_t>(r)]) << "radius " << r;
    EXPECT_EQ(std::set<GroupElement>(ball.begin(), ball.end()), oracle) << "radius " << r;
  }
  const auto ball8 = enumerate_ball(8);
  EXPECT_EQ(ball8.size(), expected[8]);
  EXPECT_TRUE(std::is_sorted(ball8.begin(), ball8.end()));
  for (const GroupElement& g : ball8) {
    EXPECT_LE(std::abs(g.b), 8);
    EXPECT_LE(std::abs(g.c), 8);
  }
}

TEST(Group, BallRadiusGuard) {
  EXPECT_THROW(enumerate_ball(11), GroupError);
  EXPECT_THROW(enumerate_ball(-1), GroupError);
}

TEST(Group, Membership) {
  EXPECT_TRUE(is_member(1, Rational(2), Rational(-4)));
  EXPECT_TRUE(is_member(-1, Rational(0), Rational(0)));
  EXPECT_FALSE(is_member(1, Rational(1), Rational(0)));
  EXPECT_FALSE(is_member(1, testing_support::rational(1, 2), Rational(2)));
  EXPECT_THROW(is_member(2, Rational(0), Rational(0)), GroupError);
}

TEST(GroupProperty, HomomorphismAndInverse) {
  Rng rng(7);
  const auto ball = enumerate_ball(4);
  for (int i = 0; i < 2000; ++i) {
    const GroupElement& g = ball[uniform_below(rng, ball.size())];
    const GroupElement& h = ball[uniform_below(rng, ball.size())];
    const AlgebraicPoint x = testing_support::random_point(rng);
    EXPECT_EQ(apply(compose(g, h), x), apply(g, apply(h, x)));
    EXPECT_EQ(apply(g, x), evaluate(g, x));
    EXPECT_EQ(compose(g, inverse(g)), GroupElement::identity());
    EXPECT_EQ(compose(inverse(g), g), GroupElement::identity());
    EXPECT_TRUE(is_member(g.a, Rational(2 * g.c), Rational(2 * g.b)));
  }
}

TEST(GroupProperty, WordsAgreeWithSequentialApplication) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Generator> word(uniform_below(rng, 9));
    for (Generator& gen : word) gen = kGenerators[uniform_below(rng, kGenerators.size())];
    AlgebraicPoint x = testing_support::random_point(rng);
    const AlgebraicPoint start = x;
    for (Generator gen : word) x = evaluate(element(gen), x);
    EXPECT_EQ(apply(word_to_element(word), start), x);
  }
}
