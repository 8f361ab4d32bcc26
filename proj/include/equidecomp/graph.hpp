#pragma once

// The bipartite graph G between I = [0, 1] and J = [alpha, 1 + alpha]: an
// I-point x is joined to every generator image of x that lands in J. The
// vertex set is a continuum, so the graph is only ever explored lazily from
// exact points.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "equidecomp/algebra.hpp"
#include "equidecomp/group.hpp"

namespace equidecomp {

enum class Side : std::uint8_t { I, J };

std::string_view to_string(Side side);

struct GVertex {
  Side side = Side::I;
  AlgebraicPoint point;

  friend bool operator==(const GVertex&, const GVertex&) = default;
};

struct GVertexHash {
  std::size_t operator()(const GVertex& v) const noexcept {
    return hash_value(v.point) ^ (v.side == Side::J ? 0x51ed270b27f4a5c3ULL : 0);
  }
};

/// An edge of G. Generators whose images coincide share one edge.
struct GEdge {
  AlgebraicPoint i_point;
  AlgebraicPoint j_point;
  std::vector<Generator> labels;  // g(i_point) == j_point for each label, in generator order

  GVertex i_vertex() const { return {Side::I, i_point}; }
  GVertex j_vertex() const { return {Side::J, j_point}; }
  /// The endpoint that is not `from`.
  GVertex other(const GVertex& from) const { return from.side == Side::I ? j_vertex() : i_vertex(); }
};

enum class ComponentKind : std::uint8_t { EvenCycle, FinitePath, Partial };

std::string_view to_string(ComponentKind kind);

struct ComponentView {
  ComponentKind kind = ComponentKind::Partial;
  GVertex start;
  std::size_t start_degree = 0;
  // EvenCycle: cycle length; FinitePath: edge count; Partial: vertices discovered.
  std::size_t size = 0;
  std::vector<GVertex> vertices;  // in path order
  std::vector<GVertex> frontier;  // discovered but unexpanded (Partial only)
  std::size_t budget = 0;
  std::size_t budget_used = 0;
};

/// Throws Finding(EvenPathComponent) for a finite path with an even edge count
/// and Finding(OddCycleComponent) for an odd cycle.
void check_component_parity(const ComponentView& view);

class SchreierGraph {
 public:
  explicit SchreierGraph(AlphaContext ctx);

  const AlphaContext& context() const noexcept { return ctx_; }

  const AlgebraicPoint& lower(Side side) const { return side == Side::I ? i_lo_ : j_lo_; }
  const AlgebraicPoint& upper(Side side) const { return side == Side::I ? i_hi_ : j_hi_; }
  bool contains(const GVertex& v) const;

  /// One or two edges. Throws GraphError (VertexOutOfRange) outside the side's interval.
  std::vector<GEdge> neighbors(const GVertex& v) const;
  std::vector<GVertex> adjacent(const GVertex& v) const;
  std::size_t degree(const GVertex& v) const { return neighbors(v).size(); }
  bool is_edge(const GVertex& u, const GVertex& v) const;

  /// (I,0), (I,1), (J,alpha), (J,1+alpha).
  std::vector<GVertex> degree_one_vertices() const;

  /// Shortest path from u to v expanding at most `budget` vertices and
  /// following paths of at most `max_depth` edges.
  std::optional<std::vector<GVertex>> shortest_path(const GVertex& u, const GVertex& v, std::size_t budget,
                                                    std::size_t max_depth = SIZE_MAX) const;
  std::optional<std::size_t> bfs_distance(const GVertex& u, const GVertex& v, std::size_t budget) const;

  /// Walks both ways from v (G has maximum degree two) expanding at most
  /// `budget` vertices. Fully explored components go through check_component_parity.
  ComponentView explore_component(const GVertex& v, std::size_t budget) const;

 private:
  AlphaContext ctx_;
  AlgebraicPoint i_lo_, i_hi_, j_lo_, j_hi_;
};

struct ComponentRecord {
  GVertex start;
  ComponentKind kind;
  std::size_t size;
  std::size_t budget_used;
};

struct SampleReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t budget = 0;
  std::map<std::size_t, std::size_t> degree_counts_i;
  std::map<std::size_t, std::size_t> degree_counts_j;
  std::vector<GVertex> degree_one;  // distinct, in the order found
  std::map<ComponentKind, std::size_t> kind_counts;
  std::vector<ComponentRecord> components;  // finitely explored ones only
};

/// Draws n rationals t in [0, 1] (bounded denominators), records the degrees
/// of (I, t) and (J, t + alpha) and explores the component of (I, t).
SampleReport classify_sample(const SchreierGraph& graph, std::size_t n, std::size_t budget, std::uint64_t seed);

}  // namespace equidecomp
