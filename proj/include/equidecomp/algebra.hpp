#pragma once

// Exact arithmetic on numbers of the form u + v*alpha, with u, v rational and
// alpha = (p + q*sqrt(d)) / r a fixed quadratic irrational in (0, 1).
//
// Because alpha is irrational, u + v*alpha is zero iff u = v = 0, so equality
// is componentwise on canonical rationals. Ordering reduces to the sign of
// s + t*sqrt(d) for rationals s, t, which is decided exactly by squaring.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace equidecomp {

using Rational = mpq_class;

/// Parses "n" or "n/d" into a canonical rational. Throws AlgebraError(Parse).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

/// alpha = (p + q*sqrt(d)) / r.
struct AlphaSpec {
  std::int64_t p = -1;
  std::int64_t q = 1;
  std::int64_t d = 2;
  std::int64_t r = 1;

  friend bool operator==(const AlphaSpec&, const AlphaSpec&) = default;
};

/// Parses "p,q,d,r".
AlphaSpec parse_alpha_spec(std::string_view text);
std::string to_string(const AlphaSpec& spec);

class AlgebraicPoint {
 public:
  AlgebraicPoint() = default;
  AlgebraicPoint(Rational u, Rational v);
  // NOLINTNEXTLINE(google-explicit-constructor)
  AlgebraicPoint(long rational_part) : u_(rational_part), v_(0) {}

  static AlgebraicPoint rational(Rational u) { return {std::move(u), Rational(0)}; }
  /// The point alpha itself.
  static AlgebraicPoint alpha() { return {Rational(0), Rational(1)}; }

  const Rational& u() const noexcept { return u_; }
  const Rational& v() const noexcept { return v_; }

  /// Keys are equal iff the points are equal.
  std::string canonical_key() const;

  AlgebraicPoint operator-() const { return {-u_, -v_}; }
  AlgebraicPoint& operator+=(const AlgebraicPoint& rhs);
  AlgebraicPoint& operator-=(const AlgebraicPoint& rhs);
  AlgebraicPoint& operator*=(const Rational& scale);

  friend AlgebraicPoint operator+(AlgebraicPoint lhs, const AlgebraicPoint& rhs) { return lhs += rhs; }
  friend AlgebraicPoint operator-(AlgebraicPoint lhs, const AlgebraicPoint& rhs) { return lhs -= rhs; }
  friend AlgebraicPoint operator*(AlgebraicPoint lhs, const Rational& scale) { return lhs *= scale; }
  friend AlgebraicPoint operator*(const Rational& scale, AlgebraicPoint rhs) { return rhs *= scale; }

  friend bool operator==(const AlgebraicPoint& lhs, const AlgebraicPoint& rhs) {
    return lhs.u_ == rhs.u_ && lhs.v_ == rhs.v_;
  }

  /// "u + v*a" with rationals in lowest terms; for display only.
  std::string to_string() const;

 private:
  Rational u_{0};
  Rational v_{0};
};

std::string canonical_key(const AlgebraicPoint& x);
std::size_t hash_value(const AlgebraicPoint& x) noexcept;

/// Holds a validated alpha; every order-dependent decision goes through it.
class AlphaContext {
 public:
  /// Throws AlgebraError(RationalAlpha) when q = 0 or d is a perfect square,
  /// AlgebraError(OutOfRange) unless 0 < alpha < 1. Also rejects r <= 0 and d <= 0.
  static AlphaContext make(const AlphaSpec& spec);

  const AlphaSpec& spec() const noexcept { return spec_; }

  /// Exact sign of x as -1, 0, +1.
  int sign(const AlgebraicPoint& x) const;
  std::strong_ordering compare(const AlgebraicPoint& x, const AlgebraicPoint& y) const;

  bool less(const AlgebraicPoint& x, const AlgebraicPoint& y) const { return compare(x, y) < 0; }
  bool less_equal(const AlgebraicPoint& x, const AlgebraicPoint& y) const { return compare(x, y) <= 0; }

  /// Membership in [lo, hi] (closed) or (lo, hi) (open). Throws
  /// AlgebraError(EmptyInterval) if lo > hi.
  bool in_interval(const AlgebraicPoint& x, const AlgebraicPoint& lo, const AlgebraicPoint& hi,
                   bool closed) const;

  /// Floating approximation, for rendering and sanity cross-checks only.
  long double approx_alpha() const noexcept { return alpha_approx_; }
  long double approx(const AlgebraicPoint& x) const;

 private:
  explicit AlphaContext(const AlphaSpec& spec);

  AlphaSpec spec_;
  Rational p_, q_, d_, r_;
  long double alpha_approx_ = 0;
};

inline std::strong_ordering compare(const AlphaContext& ctx, const AlgebraicPoint& x,
                                    const AlgebraicPoint& y) {
  return ctx.compare(x, y);
}

inline bool in_interval(const AlphaContext& ctx, const AlgebraicPoint& x, const AlgebraicPoint& lo,
                        const AlgebraicPoint& hi, bool closed) {
  return ctx.in_interval(x, lo, hi, closed);
}

}  // namespace equidecomp

template <>
struct std::hash<equidecomp::AlgebraicPoint> {
  std::size_t operator()(const equidecomp::AlgebraicPoint& x) const noexcept;
};
