#include "equidecomp/figure.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "equidecomp/errors.hpp"

namespace equidecomp {

namespace {

constexpr double kScale = 400.0;
constexpr double kMargin = 80.0;

std::string fixed(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(v));
  return buf;
}

std::string pretty(const AlgebraicPoint& p) {
  auto alpha_term = [](const Rational& v) {
    const Rational mag = abs(v);
    return (mag == 1 ? std::string() : mag.get_str(10)) + "α";
  };
  if (p.v() == 0) return p.u().get_str(10);
  if (p.u() == 0) return (sgn(p.v()) < 0 ? "-" : "") + alpha_term(p.v());
  return p.u().get_str(10) + (sgn(p.v()) < 0 ? " - " : " + ") + alpha_term(p.v());
}

}  // namespace

std::string corner_label(const PlanePoint& p) { return "(" + pretty(p.x) + ", " + pretty(p.y) + ")"; }

EdgePolygon edge_polygon(const AlphaContext& ctx) {
  const AlgebraicPoint zero(0);
  const AlgebraicPoint one(1);
  const AlgebraicPoint j_lo = AlgebraicPoint::alpha();
  const AlgebraicPoint j_hi = one + AlgebraicPoint::alpha();

  std::vector<EdgeSegment> pending;
  for (Generator gen : kGenerators) {
    const GroupElement g = element(gen);
    // g(x) = a*x + k lies in [j_lo, j_hi] iff x lies between g^-1(j_lo) and g^-1(j_hi).
    AlgebraicPoint lo = apply(inverse(g), j_lo);
    AlgebraicPoint hi = apply(inverse(g), j_hi);
    if (ctx.less(hi, lo)) std::swap(lo, hi);
    if (ctx.less(lo, zero)) lo = zero;
    if (ctx.less(one, hi)) hi = one;
    if (!ctx.less(lo, hi)) continue;
    EdgeSegment seg{gen, {lo, apply(g, lo)}, {hi, apply(g, hi)}, g.a};
    if (!(seg.to.y - seg.from.y == (seg.to.x - seg.from.x) * Rational(g.a))) {
      throw Error("segment of " + std::string(to_string(gen)) + " is not of slope " + std::to_string(g.a));
    }
    pending.push_back(std::move(seg));
  }
  if (pending.empty()) throw Error("no edges between I and J");

  EdgePolygon polygon;
  polygon.segments.push_back(pending.front());
  pending.erase(pending.begin());
  polygon.outline = {polygon.segments.front().from, polygon.segments.front().to};
  while (!pending.empty()) {
    const PlanePoint tail = polygon.outline.back();
    auto it = std::find_if(pending.begin(), pending.end(),
                           [&](const EdgeSegment& s) { return s.from == tail || s.to == tail; });
    if (it == pending.end()) throw Error("edge segments do not chain at " + corner_label(tail));
    polygon.outline.push_back(it->from == tail ? it->to : it->from);
    polygon.segments.push_back(*it);
    pending.erase(it);
  }
  if (!(polygon.outline.front() == polygon.outline.back())) throw Error("edge segments do not close up");
  return polygon;
}

std::string render_svg(const AlphaContext& ctx, const EdgePolygon& polygon) {
  const long double a = ctx.approx_alpha();
  auto px = [&](const AlgebraicPoint& x) { return kMargin + ctx.approx(x) * kScale; };
  auto py = [&](const AlgebraicPoint& y) { return kMargin + (1.0L + a - ctx.approx(y)) * kScale; };
  const std::string size = fixed(2 * kMargin + kScale);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
      << "  <title>Edge set of G in I x J</title>\n"
      << "  <rect x=\"" << fixed(kMargin) << "\" y=\"" << fixed(kMargin) << "\" width=\"" << fixed(kScale)
      << "\" height=\"" << fixed(kScale) << "\" fill=\"none\" stroke=\"gray\" stroke-width=\"1\"/>\n";

  out << "  <polygon id=\"edges\" points=\"";
  const std::vector<PlanePoint> corners = polygon.corners();
  for (std::size_t k = 0; k < corners.size(); ++k) {
    out << (k ? " " : "") << fixed(px(corners[k].x)) << ',' << fixed(py(corners[k].y));
  }
  out << "\" fill=\"none\" stroke=\"black\" stroke-width=\"4\"/>\n";

  for (const EdgeSegment& s : polygon.segments) {
    out << "  <line class=\"segment\" data-generator=\"" << to_string(s.generator) << "\" data-slope=\"" << s.slope
        << "\" x1=\"" << fixed(px(s.from.x)) << "\" y1=\"" << fixed(py(s.from.y)) << "\" x2=\"" << fixed(px(s.to.x))
        << "\" y2=\"" << fixed(py(s.to.y)) << "\" stroke=\"black\" stroke-width=\"1\" stroke-opacity=\"0\"/>\n";
  }

  for (const PlanePoint& c : corners) {
    const long double cx = px(c.x);
    const long double cy = py(c.y);
    const bool left = cx < kMargin + kScale / 2;
    out << "  <circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy) << "\" r=\"3\" fill=\"black\"/>\n"
        << "  <text x=\"" << fixed(cx + (left ? -8 : 8)) << "\" y=\"" << fixed(cy + (cy > kMargin + kScale / 2 ? 18 : -8))
        << "\" text-anchor=\"" << (left ? "end" : "start") << "\" font-family=\"serif\" font-size=\"14\""
        << " data-x=\"" << c.x.canonical_key() << "\" data-y=\"" << c.y.canonical_key() << "\">" << corner_label(c)
        << "</text>\n";
  }
  out << "  <text x=\"" << fixed(kMargin + kScale / 2) << "\" y=\"" << fixed(2 * kMargin + kScale - 30)
      << "\" text-anchor=\"middle\" font-family=\"serif\" font-size=\"16\" font-weight=\"bold\">I</text>\n"
      << "  <text x=\"" << fixed(kMargin - 50) << "\" y=\"" << fixed(kMargin + kScale / 2)
      << "\" text-anchor=\"middle\" font-family=\"serif\" font-size=\"16\" font-weight=\"bold\">J</text>\n"
      << "</svg>\n";
  return out.str();
}

}  // namespace equidecomp
