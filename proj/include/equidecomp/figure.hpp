#pragma once

// The edge set of G drawn as a point set in I x J: each generator contributes
// one unit-slope segment {(x, g(x))}, and the four segments close up into a
// quadrilateral.

#include <string>
#include <vector>

#include "equidecomp/algebra.hpp"
#include "equidecomp/group.hpp"

namespace equidecomp {

struct PlanePoint {
  AlgebraicPoint x;  // I coordinate
  AlgebraicPoint y;  // J coordinate

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct EdgeSegment {
  Generator generator;
  PlanePoint from;  // smaller x
  PlanePoint to;
  int slope = 0;    // +1 or -1, exact
};

struct EdgePolygon {
  std::vector<EdgeSegment> segments;  // in traversal order
  std::vector<PlanePoint> outline;    // closed: outline.front() == outline.back()

  /// Distinct corners in traversal order.
  std::vector<PlanePoint> corners() const {
    return {outline.begin(), outline.end() - (outline.empty() ? 0 : 1)};
  }
};

/// Throws Error if the segments do not chain into a closed polygon.
EdgePolygon edge_polygon(const AlphaContext& ctx);

/// SVG 1.1 drawing of the polygon inside the box [0, 1] x [alpha, 1 + alpha],
/// corners labelled with their exact coordinates.
std::string render_svg(const AlphaContext& ctx, const EdgePolygon& polygon);

/// "(1 - a, 1 + a)" style label.
std::string corner_label(const PlanePoint& p);

}  // namespace equidecomp
