#pragma once

// Explicit short paths in G between an I-point y and its image g(y) for a group
// element g = (a, b, c), built by induction on |b|: each step trades g for an
// element with |b| one smaller that sends y to an intermediate I-point z
// within two edges of g(y).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "equidecomp/algebra.hpp"
#include "equidecomp/errors.hpp"
#include "equidecomp/graph.hpp"
#include "equidecomp/group.hpp"

namespace equidecomp {

class PathError : public Error {
 public:
  using Error::Error;
};

enum class ReductionCase : std::uint8_t {
  ShiftUp,      // b < 0, g(y) <= 1 - 2a:  z = g(y) + 2a
  ReflectHigh,  // b < 0, g(y) >  1 - 2a:  z = 2 - (g(y) + 2a)
  ShiftDown,    // b > 0, g(y) >  2a:      z = g(y) - 2a
  ReflectLow,   // b > 0, g(y) <= 2a:      z = 2a - g(y)
};

std::string_view to_string(ReductionCase c);

struct ReductionStep {
  GroupElement element;        // acting on the anchor at this level
  AlgebraicPoint image;        // element(anchor)
  ReductionCase which;
  GroupElement reduced;        // |reduced.b| == |element.b| - 1
  AlgebraicPoint intermediate; // reduced(anchor)
  std::vector<GVertex> connector;  // intermediate ~> image, at most two edges
};

struct CertifiedPath {
  GroupElement element;
  AlgebraicPoint anchor;
  std::vector<GVertex> vertices;  // (I, anchor) ... (I, element(anchor))
  std::size_t length = 0;         // edge count
  std::vector<ReductionStep> steps;  // outermost first
};

/// Requires anchor and g(anchor) in [0, 1] (PathError otherwise). Throws
/// Finding(IntermediateOutOfRange) if a case yields z outside [0, 1],
/// Finding(ConnectorMissing) if z is not within two edges of g(y), and
/// Finding(LemmaViolation) if the |b| = 0 base does not fix the anchor.
CertifiedPath build_path(const SchreierGraph& graph, const GroupElement& g, const AlgebraicPoint& anchor);

/// Empty string when the path is valid: endpoints, adjacency, length <= 2|b|.
std::string validate_path(const SchreierGraph& graph, const CertifiedPath& path);

struct AnchorInterval {
  AlgebraicPoint lo;
  AlgebraicPoint hi;
};

/// {y in [0, 1] : g(y) in [0, 1]}, or nothing when empty.
std::optional<AnchorInterval> anchor_interval(const AlphaContext& ctx, const GroupElement& g);

/// Up to n distinct anchors in anchor_interval(g): both endpoints, the
/// preimages of 2a and 1 - 2a and of their +-1/1000 perturbations, then an
/// even grid and seeded random fill.
std::vector<AlgebraicPoint> lemma_anchors(const AlphaContext& ctx, const GroupElement& g, std::size_t n,
                                          std::uint64_t seed);

struct LemmaReport {
  AlphaSpec alpha;
  int radius = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t ball_size = 0;
  std::size_t elements_with_anchors = 0;
  std::size_t checks = 0;
  std::vector<nlohmann::ordered_json> violations;
  std::map<std::int64_t, std::size_t> max_dist_by_b;
  std::map<std::int64_t, std::size_t> max_path_by_b;
  std::map<std::string, std::size_t> case_counts;

  bool clean() const { return violations.empty(); }
};

/// Checks, for each g in the ball and each anchor y: BFS distance <= 2|b|, a
/// valid certified path of length <= 2|b|, and BFS distance <= path length.
/// Failures are collected as violations with their witnesses.
LemmaReport verify_lemma(const SchreierGraph& graph, int radius, std::size_t samples, std::uint64_t seed,
                         std::size_t budget, unsigned threads = 0);

}  // namespace equidecomp
