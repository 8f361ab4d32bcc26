#include <gtest/gtest.h>

#include <cmath>

#include "equidecomp/algebra.hpp"
#include "equidecomp/errors.hpp"
#include "support.hpp"

using namespace equidecomp;
using testing_support::kAlphas;
using testing_support::rational;

namespace {

AlgebraError::Kind kind_of(const AlphaSpec& spec) {
  try {
    AlphaContext::make(spec);
  } catch (const AlgebraError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an AlgebraError for " << to_string(spec);
  return AlgebraError::Kind::Parse;
}

}  // namespace

TEST(Alpha, DefaultIsSqrtTwoMinusOne) {
  const AlphaContext ctx = AlphaContext::make(AlphaSpec{});
  EXPECT_NEAR(static_cast<double>(ctx.approx_alpha()), std::sqrt(2.0) - 1.0, 1e-15);
  EXPECT_EQ(ctx.sign(AlgebraicPoint::alpha()), 1);
}

TEST(Alpha, RejectsRationalAndOutOfRange) {
  EXPECT_EQ(kind_of({1, 1, 4, 3}), AlgebraError::Kind::RationalAlpha);
  EXPECT_EQ(kind_of({1, 0, 2, 3}), AlgebraError::Kind::RationalAlpha);
  EXPECT_EQ(kind_of({0, 1, 2, 1}), AlgebraError::Kind::OutOfRange);   // sqrt2 > 1
  EXPECT_EQ(kind_of({-2, 1, 2, 1}), AlgebraError::Kind::OutOfRange);  // negative
  EXPECT_EQ(kind_of({-1, 1, 2, 0}), AlgebraError::Kind::Parse);
}

TEST(Alpha, ParsesSpec) {
  const AlphaSpec spec = parse_alpha_spec("-1,1,5,2");
  EXPECT_EQ(spec.p, -1);
  EXPECT_EQ(spec.d, 5);
  EXPECT_EQ(spec.r, 2);
  EXPECT_THROW(parse_alpha_spec("1,2,3"), AlgebraError);
  EXPECT_THROW(parse_alpha_spec("a,b,c,d"), AlgebraError);
}

TEST(Compare, SpecExamples) {
  const AlphaContext ctx = AlphaContext::make(AlphaSpec{});
  const AlgebraicPoint a = AlgebraicPoint::alpha();
  EXPECT_EQ(ctx.compare(a, AlgebraicPoint::rational(rational(1, 2))), std::strong_ordering::less);
  EXPECT_EQ(ctx.compare(a * Rational(2), AlgebraicPoint::rational(rational(4, 5))), std::strong_ordering::greater);
  EXPECT_EQ(ctx.compare(AlgebraicPoint(1) - a, a), std::strong_ordering::greater);
  EXPECT_EQ(ctx.compare(a, a), std::strong_ordering::equal);
  // 1 - 2a and 2a straddle 1/2 from opposite sides.
  EXPECT_TRUE(ctx.less(AlgebraicPoint(1) - a * Rational(2), a * Rational(2)));
}

TEST(Compare, CloseToAlphaNeedsExactness) {
  const AlphaContext ctx = AlphaContext::make(AlphaSpec{});
  // Rationals within 1e-9 of alpha; sides checked with 80-digit decimals.
  const AlgebraicPoint a = AlgebraicPoint::alpha();
  EXPECT_TRUE(ctx.less(a, AlgebraicPoint::rational(rational(5741, 13860))));
  EXPECT_TRUE(ctx.less(AlgebraicPoint::rational(rational(13860, 33461)), a));
  const Rational big("665857/1607521");
  EXPECT_TRUE(ctx.less(a, AlgebraicPoint::rational(big)));
  const Rational huge("1572584048032918633353217/3796553736732654909229441");
  EXPECT_TRUE(ctx.less(a, AlgebraicPoint::rational(huge)));
}

TEST(Interval, ClosedOpenAndEmpty) {
  const AlphaContext ctx = AlphaContext::make(AlphaSpec{});
  const AlgebraicPoint a = AlgebraicPoint::alpha();
  const AlgebraicPoint one_plus_a = AlgebraicPoint(1) + a;
  EXPECT_TRUE(ctx.in_interval(a, a, one_plus_a, true));
  EXPECT_FALSE(ctx.in_interval(a, a, one_plus_a, false));
  EXPECT_TRUE(ctx.in_interval(AlgebraicPoint(1), a, one_plus_a, false));
  EXPECT_THROW(ctx.in_interval(a, one_plus_a, a, true), AlgebraError);
}

TEST(Point, CanonicalRepresentation) {
  const AlgebraicPoint x(Rational(2, 4), Rational(-3, 9));
  EXPECT_EQ(x.canonical_key(), "1/2|-1/3");
  EXPECT_EQ(x, AlgebraicPoint(rational(1, 2), rational(-1, 3)));
  EXPECT_EQ((x * Rational(10, 4)).canonical_key(), "5/4|-5/6");
  EXPECT_EQ(std::hash<AlgebraicPoint>{}(x), std::hash<AlgebraicPoint>{}(AlgebraicPoint(rational(1, 2), rational(-1, 3))));
}

TEST(CompareProperty, AgreesWithFloatingPointAwayFromTies) {
  for (const AlphaSpec& spec : kAlphas) {
    const AlphaContext ctx = AlphaContext::make(spec);
    Rng rng(derive_seed(11, static_cast<std::uint64_t>(spec.d)));
    for (int i = 0; i < 2000; ++i) {
      const AlgebraicPoint x = testing_support::random_point(rng);
      const AlgebraicPoint y = testing_support::random_point(rng);
      const long double fx = ctx.approx(x);
      const long double fy = ctx.approx(y);
      if (std::fabs(static_cast<double>(fx - fy)) < 1e-9) continue;
      EXPECT_EQ(ctx.less(x, y), fx < fy) << x.to_string() << " vs " << y.to_string();
    }
  }
}

TEST(CompareProperty, TotalOrderAxioms) {
  for (const AlphaSpec& spec : kAlphas) {
    const AlphaContext ctx = AlphaContext::make(spec);
    Rng rng(derive_seed(12, static_cast<std::uint64_t>(spec.d)));
    for (int i = 0; i < 1000; ++i) {
      const AlgebraicPoint x = testing_support::random_point(rng, 2, 6);
      const AlgebraicPoint y = testing_support::random_point(rng, 2, 6);
      const AlgebraicPoint z = testing_support::random_point(rng, 2, 6);
      // Antisymmetry and equality consistency.
      EXPECT_EQ(ctx.compare(x, y) == 0, x == y);
      EXPECT_EQ(ctx.compare(x, y) < 0, ctx.compare(y, x) > 0);
      // Transitivity.
      if (ctx.less_equal(x, y) && ctx.less_equal(y, z)) {
        EXPECT_TRUE(ctx.less_equal(x, z));
      }
      // Translation invariance.
      EXPECT_EQ(ctx.compare(x, y), ctx.compare(x + z, y + z));
      // Sign of a difference.
      EXPECT_EQ(ctx.sign(x - y), ctx.compare(x, y) < 0 ? -1 : (x == y ? 0 : 1));
    }
  }
}

TEST(CompareProperty, LargeCoefficientsUseTheSlowPathConsistently) {
  const AlphaContext ctx = AlphaContext::make(AlphaSpec{});
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    const AlgebraicPoint x = testing_support::random_point(rng, 3, 40);
    const Rational big("123456789012345678901234567890");
    // Scaling by a huge positive rational preserves sign but leaves the fast path.
    EXPECT_EQ(ctx.sign(x * big), ctx.sign(x));
  }
}
