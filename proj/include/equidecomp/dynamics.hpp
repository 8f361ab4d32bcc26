#pragma once

// Matching-improvement dynamics on a finite family of integer-indexed
// bi-infinite paths. Even coordinates form class A, odd coordinates class B,
// and H joins i to i + 1. A KMatching pairs each vertex with one at odd
// distance at most K, and agrees with the standard shift a -> a + 1 outside
// a finite window per path, so all costs below are finite integers.
//
// One improvement step finds every pair a, a' = a + 2 whose rays face each
// other (M(a) > a, M(a') < a') and swaps their partners. Each swap lowers the
// total displacement by at least two, so the process terminates, and once no
// facing pair is left every ray points the same way and the matching can be
// read off as a perfect matching of H.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "equidecomp/graph.hpp"
#include "equidecomp/group.hpp"

namespace equidecomp {

using Coord = std::int64_t;

inline constexpr bool is_class_a(Coord x) { return x % 2 == 0; }

struct PathVertex {
  std::size_t path = 0;
  Coord coord = 0;

  friend constexpr bool operator==(const PathVertex&, const PathVertex&) = default;
  friend constexpr auto operator<=>(const PathVertex&, const PathVertex&) = default;
};

/// Deviation window [lo, hi] of one path (lo even, hi odd) and the partners of
/// its A-vertices: partner[i] = M(lo + 2i).
struct PathMatching {
  Coord lo = 0;
  Coord hi = -1;
  std::vector<Coord> partner;

  friend bool operator==(const PathMatching&, const PathMatching&) = default;
};

/// Empty when (k, paths) describes a valid matching of H^k.
std::string matching_problem(int k, std::span<const PathMatching> paths);

class KMatching {
 public:
  /// Throws DynamicsError(InvalidK) for even or non-positive k and
  /// DynamicsError(InvalidMatching) if matching_problem reports anything.
  KMatching(int k, std::vector<PathMatching> paths);

  /// The standard shift on windows [0, width - 1] of `path_count` paths.
  static KMatching standard(int k, Coord width, std::size_t path_count = 1);

  int k() const noexcept { return k_; }
  std::size_t path_count() const noexcept { return paths_.size(); }
  const PathMatching& path(std::size_t p) const { return paths_.at(p); }
  const std::vector<PathMatching>& paths() const noexcept { return paths_; }

  /// M(x) for any vertex, inside or outside the window.
  Coord partner(const PathVertex& x) const;
  /// +1 or -1: the side of x on which M(x) lies.
  int direction(const PathVertex& x) const { return partner(x) > x.coord ? 1 : -1; }
  bool is_standard() const;

  friend bool operator==(const KMatching& lhs, const KMatching& rhs) {
    return lhs.k_ == rhs.k_ && lhs.paths_ == rhs.paths_;
  }

 private:
  int k_;
  std::vector<PathMatching> paths_;
  std::vector<std::vector<Coord>> b_partner_;  // b_partner_[p][j] = M(lo + 1 + 2j)
};

/// Sum over A of (|a - M(a)| - 1).
std::int64_t cost(const KMatching& m);

/// The ray from x through M(x).
struct Ray {
  PathVertex start;
  int direction = 1;

  bool contains(const PathVertex& x) const {
    return x.path == start.path && (x.coord - start.coord) * direction >= 0;
  }
};

Ray ray(const KMatching& m, const PathVertex& x);

/// x, y in A at distance two, each in the other's ray.
bool phi(const KMatching& m, const PathVertex& x, const PathVertex& y);

/// All A-vertices with a phi-partner, sorted.
std::vector<PathVertex> compute_S(const KMatching& m);

struct RewiredPair {
  PathVertex a;        // a.coord + 2 == a_prime.coord
  PathVertex a_prime;
  Coord old_a = 0;     // M(a), M(a')
  Coord old_a_prime = 0;
  Coord new_a = 0;     // M'(a) = M(a'), M'(a') = M(a)
  Coord new_a_prime = 0;
};

struct ImproveStep {
  KMatching next;
  std::vector<RewiredPair> pairs;
};

/// Simultaneously rematches every phi-pair. Throws DynamicsError(EmptyS) when
/// there is none, Finding(Claim1Violation) if a rewired pair breaks the K
/// bound or fails to shorten by two.
ImproveStep improve_step(const KMatching& m);
KMatching improve(const KMatching& m);

struct TraceRecord {
  std::size_t n = 0;
  std::size_t s_size = 0;
  std::int64_t cost = 0;
  std::size_t rewired_pairs = 0;
};

struct DynamicsTrace {
  std::vector<TraceRecord> records;  // one per matching visited, the last with s_size == 0

  std::size_t iterations() const { return records.empty() ? 0 : records.size() - 1; }
  std::int64_t total_s() const;
};

struct DynamicsResult {
  KMatching final;
  DynamicsTrace trace;
};

/// Applies improve until S is empty. Throws DynamicsError(IterationCap) if
/// that takes more than max_iters steps.
DynamicsResult run_dynamics(const KMatching& m0, std::size_t max_iters);

/// Whether every ray on each path points the same way.
bool check_nested_rays(const KMatching& m);

/// Matches each a in A to a + direction(a). Result has k = 1. Throws
/// DynamicsError(SNotEmpty) unless S is empty.
KMatching extract_matching(const KMatching& m);

/// Standard matching on [0, window - 1] of each path scrambled by
/// `transpositions` seeded attempts to swap the partners of two nearby
/// A-vertices (kept only if both stay within distance k).
KMatching random_kmatching(Coord window, int k, std::uint64_t seed, std::size_t transpositions,
                           std::size_t path_count = 1);
inline KMatching random_kmatching(Coord window, int k, std::uint64_t seed) {
  return random_kmatching(window, k, seed, static_cast<std::size_t>(window));
}

/// 2L + 1: elements with |b| <= L move I-points to J-points at most this far in G.
constexpr int bridge_k_bound(int max_abs_b) { return 2 * max_abs_b + 1; }

/// A stretch of one component of G laid out on coordinates [-radius, radius],
/// the anchor I-point at 0, so I-points sit at even coordinates.
class ComponentChart {
 public:
  /// Throws GraphError if the component ends or closes up within the radius.
  static ComponentChart build(const SchreierGraph& graph, const AlgebraicPoint& anchor, Coord radius);

  Coord lo() const noexcept { return -radius_; }
  Coord hi() const noexcept { return radius_; }
  const GVertex& vertex(Coord x) const;
  std::optional<Coord> coord_of(const GVertex& v) const;

  /// The element obtained by composing edge labels along the chart, mapping
  /// vertex(from) to vertex(to) (as points, I or J alike).
  GroupElement element_between(Coord from, Coord to) const;

 private:
  ComponentChart(const SchreierGraph& graph, Coord radius) : graph_(&graph), radius_(radius) {}

  const SchreierGraph* graph_;
  Coord radius_;
  std::vector<GVertex> vertices_;
  std::unordered_map<GVertex, Coord, GVertexHash> index_;
};

/// Moves A-coordinates [lo, hi] (even ones) by `element`.
struct AssignmentPiece {
  Coord lo = 0;
  Coord hi = 0;
  GroupElement element;
};

/// The KMatching, k = bridge_k_bound(max |b|), sending each assigned
/// A-coordinate a to the coordinate of element(vertex(a)). Throws
/// DynamicsError(NotAMatching) for gaps, overlaps, images off the chart or
/// outside the window, repeated images, or displacements beyond k.
KMatching kmatching_from_assignment(const ComponentChart& chart, std::span<const AssignmentPiece> pieces);

/// Inverse of kmatching_from_assignment for a single-path matching laid on
/// the chart: maximal runs of A-coordinates moved by the same element.
std::vector<AssignmentPiece> assignment_for(const ComponentChart& chart, const KMatching& m);

}  // namespace equidecomp
