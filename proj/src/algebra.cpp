#include "equidecomp/algebra.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <vector>

#include "equidecomp/errors.hpp"

namespace equidecomp {

namespace {

bool parse_integer_text(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

mpz_class to_mpz(std::string_view text) {
  if (!text.empty() && text[0] == '+') text.remove_prefix(1);
  return mpz_class(std::string(text), 10);
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = mpz_sgn(z.get_mpz_t()) < 0 ? 0x9e3779b97f4a7c15ULL : 0;
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// Sign of s + t*sqrt(d) for d > 0 not a square.
int sign_with_root(const Rational& s, const Rational& t, const Rational& d) {
  const int ss = sgn(s);
  const int ts = sgn(t);
  if (ss >= 0 && ts >= 0) return (ss > 0 || ts > 0) ? 1 : 0;
  if (ss <= 0 && ts <= 0) return -1;
  // Opposite signs: compare s^2 with t^2 * d. Equality is impossible for
  // non-square d with t != 0.
  const Rational lhs = s * s;
  const Rational rhs = t * t * d;
  if (ss > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

using Wide = __int128;

bool small(const mpz_class& z, long limit) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 && std::labs(z.get_si()) < limit;
}

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

// Same decision as sign_with_root in 128-bit integers; nullopt when the
// operands are too large to square without overflow.
std::optional<int> small_sign(const Rational& u, const Rational& v, std::int64_t p, std::int64_t q,
                              std::int64_t d, std::int64_t r) {
  constexpr long kLimit = 1L << 31;
  if (!small(u.get_num(), kLimit) || !small(u.get_den(), kLimit) || !small(v.get_num(), kLimit) ||
      !small(v.get_den(), kLimit) || d >= (1 << 14) || std::llabs(p) >= kLimit || std::llabs(q) >= kLimit ||
      r >= kLimit) {
    return std::nullopt;
  }
  const Wide un = u.get_num().get_si(), ud = u.get_den().get_si();
  const Wide vn = v.get_num().get_si(), vd = v.get_den().get_si();
  // Scale by ud * vd * r > 0.
  const Wide s = un * vd * r + vn * ud * p;
  const Wide t = vn * ud * q;
  constexpr Wide kSquareLimit = Wide(1) << 56;
  if (wide_abs(s) >= kSquareLimit || wide_abs(t) >= kSquareLimit) return std::nullopt;
  const int ss = s > 0 ? 1 : (s < 0 ? -1 : 0);
  const int ts = t > 0 ? 1 : (t < 0 ? -1 : 0);
  if (ss >= 0 && ts >= 0) return (ss > 0 || ts > 0) ? 1 : 0;
  if (ss <= 0 && ts <= 0) return -1;
  const Wide lhs = s * s;
  const Wide rhs = t * t * d;
  if (ss > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  const std::string_view num = trim(text.substr(0, slash));
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  if (!parse_integer_text(num) || !parse_integer_text(den)) {
    throw AlgebraError(AlgebraError::Kind::Parse, "not a rational: '" + std::string(text) + "'");
  }
  mpz_class n = to_mpz(num);
  mpz_class d = to_mpz(den);
  if (d == 0) {
    throw AlgebraError(AlgebraError::Kind::Parse, "zero denominator: '" + std::string(text) + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

AlphaSpec parse_alpha_spec(std::string_view text) {
  std::vector<std::int64_t> parts;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    std::int64_t value = 0;
    const char* first = item.data();
    if (!item.empty() && item.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw AlgebraError(AlgebraError::Kind::Parse, "alpha must be four integers p,q,d,r: '" + std::string(text) + "'");
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (parts.size() != 4) {
    throw AlgebraError(AlgebraError::Kind::Parse, "alpha must be four integers p,q,d,r: '" + std::string(text) + "'");
  }
  return {parts[0], parts[1], parts[2], parts[3]};
}

std::string to_string(const AlphaSpec& spec) {
  std::ostringstream out;
  out << spec.p << ',' << spec.q << ',' << spec.d << ',' << spec.r;
  return out.str();
}

AlgebraicPoint::AlgebraicPoint(Rational u, Rational v) : u_(std::move(u)), v_(std::move(v)) {
  u_.canonicalize();
  v_.canonicalize();
}

AlgebraicPoint& AlgebraicPoint::operator+=(const AlgebraicPoint& rhs) {
  u_ += rhs.u_;
  v_ += rhs.v_;
  return *this;
}

AlgebraicPoint& AlgebraicPoint::operator-=(const AlgebraicPoint& rhs) {
  u_ -= rhs.u_;
  v_ -= rhs.v_;
  return *this;
}

AlgebraicPoint& AlgebraicPoint::operator*=(const Rational& scale) {
  Rational s = scale;
  s.canonicalize();
  u_ *= s;
  v_ *= s;
  return *this;
}

std::string AlgebraicPoint::canonical_key() const { return u_.get_str(10) + '|' + v_.get_str(10); }

std::string AlgebraicPoint::to_string() const {
  if (v_ == 0) return u_.get_str(10);
  std::string out;
  if (u_ != 0) out = u_.get_str(10) + (sgn(v_) > 0 ? " + " : " - ");
  else if (sgn(v_) < 0) out = "-";
  const Rational mag = abs(v_);
  if (mag != 1) out += mag.get_str(10) + "*";
  return out + "a";
}

std::string canonical_key(const AlgebraicPoint& x) { return x.canonical_key(); }

std::size_t hash_value(const AlgebraicPoint& x) noexcept {
  std::size_t h = hash_mpz(x.u().get_num());
  for (const mpz_class* part : {&x.u().get_den(), &x.v().get_num(), &x.v().get_den()}) {
    h ^= hash_mpz(*part) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

AlphaContext::AlphaContext(const AlphaSpec& spec)
    : spec_(spec), p_(spec.p), q_(spec.q), d_(spec.d), r_(spec.r) {
  alpha_approx_ = (static_cast<long double>(spec.p) +
                   static_cast<long double>(spec.q) * std::sqrt(static_cast<long double>(spec.d))) /
                  static_cast<long double>(spec.r);
}

AlphaContext AlphaContext::make(const AlphaSpec& spec) {
  if (spec.r <= 0) {
    throw AlgebraError(AlgebraError::Kind::Parse, "alpha denominator r must be positive");
  }
  if (spec.d <= 0) {
    throw AlgebraError(AlgebraError::Kind::Parse, "alpha radicand d must be positive");
  }
  const mpz_class d(static_cast<long>(spec.d));
  if (spec.q == 0 || mpz_perfect_square_p(d.get_mpz_t()) != 0) {
    throw AlgebraError(AlgebraError::Kind::RationalAlpha,
                       "alpha = (" + to_string(spec) + ") is rational; an irrational alpha is required");
  }
  AlphaContext ctx(spec);
  if (ctx.sign(AlgebraicPoint::alpha()) <= 0 || ctx.compare(AlgebraicPoint::alpha(), AlgebraicPoint(1)) >= 0) {
    throw AlgebraError(AlgebraError::Kind::OutOfRange, "alpha = (" + to_string(spec) + ") is not in (0, 1)");
  }
  return ctx;
}

int AlphaContext::sign(const AlgebraicPoint& x) const {
  // r > 0, so sign(u + v*alpha) = sign(u*r + v*p + v*q*sqrt(d)).
  if (sgn(x.v()) == 0) return sgn(x.u());
  if (auto fast = small_sign(x.u(), x.v(), spec_.p, spec_.q, spec_.d, spec_.r)) return *fast;
  return sign_with_root(x.u() * r_ + x.v() * p_, x.v() * q_, d_);
}

std::strong_ordering AlphaContext::compare(const AlgebraicPoint& x, const AlgebraicPoint& y) const {
  const int s = sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool AlphaContext::in_interval(const AlgebraicPoint& x, const AlgebraicPoint& lo, const AlgebraicPoint& hi,
                               bool closed) const {
  if (compare(lo, hi) > 0) {
    throw AlgebraError(AlgebraError::Kind::EmptyInterval, "interval [" + lo.to_string() + ", " + hi.to_string() +
                                                              "] has lo > hi");
  }
  if (closed) return compare(lo, x) <= 0 && compare(x, hi) <= 0;
  return compare(lo, x) < 0 && compare(x, hi) < 0;
}

long double AlphaContext::approx(const AlgebraicPoint& x) const {
  return static_cast<long double>(x.u().get_d()) + static_cast<long double>(x.v().get_d()) * alpha_approx_;
}

}  // namespace equidecomp

std::size_t std::hash<equidecomp::AlgebraicPoint>::operator()(const equidecomp::AlgebraicPoint& x) const noexcept {
  return equidecomp::hash_value(x);
}
