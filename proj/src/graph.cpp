#include "equidecomp/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "equidecomp/errors.hpp"
#include "equidecomp/random.hpp"
#include "equidecomp/serialize.hpp"

namespace equidecomp {

std::string_view to_string(Side side) { return side == Side::I ? "I" : "J"; }

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::EvenCycle:
      return "EvenCycle";
    case ComponentKind::FinitePath:
      return "FinitePath";
    case ComponentKind::Partial:
      return "Partial";
  }
  return "?";
}

void check_component_parity(const ComponentView& view) {
  if (view.kind == ComponentKind::FinitePath && view.size % 2 == 0) {
    throw Finding(FindingKind::EvenPathComponent,
                  "fully explored finite path with even edge count " + std::to_string(view.size),
                  component_witness(view));
  }
  if (view.kind == ComponentKind::EvenCycle && view.size % 2 != 0) {
    throw Finding(FindingKind::OddCycleComponent, "odd cycle of length " + std::to_string(view.size),
                  component_witness(view));
  }
}

SchreierGraph::SchreierGraph(AlphaContext ctx)
    : ctx_(std::move(ctx)),
      i_lo_(0),
      i_hi_(1),
      j_lo_(AlgebraicPoint::alpha()),
      j_hi_(AlgebraicPoint(1) + AlgebraicPoint::alpha()) {}

bool SchreierGraph::contains(const GVertex& v) const {
  return ctx_.less_equal(lower(v.side), v.point) && ctx_.less_equal(v.point, upper(v.side));
}

std::vector<GEdge> SchreierGraph::neighbors(const GVertex& v) const {
  if (!contains(v)) {
    throw GraphError("VertexOutOfRange: (" + std::string(to_string(v.side)) + ", " + v.point.to_string() +
                     ") is outside its side's interval");
  }
  const Side other = v.side == Side::I ? Side::J : Side::I;
  std::vector<GEdge> edges;
  for (Generator gen : kGenerators) {
    const GroupElement g = element(gen);
    // From I the generator maps forward; from J we pull back along it.
    AlgebraicPoint image = v.side == Side::I ? apply(g, v.point) : apply(inverse(g), v.point);
    if (!contains({other, image})) continue;
    auto same = std::find_if(edges.begin(), edges.end(), [&](const GEdge& e) {
      return (v.side == Side::I ? e.j_point : e.i_point) == image;
    });
    if (same != edges.end()) {
      same->labels.push_back(gen);
      continue;
    }
    if (v.side == Side::I) edges.push_back({v.point, std::move(image), {gen}});
    else edges.push_back({std::move(image), v.point, {gen}});
  }
  return edges;
}

std::vector<GVertex> SchreierGraph::adjacent(const GVertex& v) const {
  std::vector<GVertex> out;
  for (const GEdge& e : neighbors(v)) out.push_back(e.other(v));
  return out;
}

bool SchreierGraph::is_edge(const GVertex& u, const GVertex& v) const {
  if (u.side == v.side || !contains(u) || !contains(v)) return false;
  const std::vector<GVertex> adj = adjacent(u);
  return std::find(adj.begin(), adj.end(), v) != adj.end();
}

std::vector<GVertex> SchreierGraph::degree_one_vertices() const {
  return {{Side::I, i_lo_}, {Side::I, i_hi_}, {Side::J, j_lo_}, {Side::J, j_hi_}};
}

std::optional<std::vector<GVertex>> SchreierGraph::shortest_path(const GVertex& u, const GVertex& v,
                                                                 std::size_t budget, std::size_t max_depth) const {
  if (!contains(u) || !contains(v)) {
    throw GraphError("VertexOutOfRange: shortest_path endpoints must lie in their intervals");
  }
  if (u == v) return std::vector<GVertex>{u};
  std::unordered_map<GVertex, GVertex, GVertexHash> parent;
  std::unordered_map<GVertex, std::size_t, GVertexHash> depth;
  std::deque<GVertex> queue{u};
  depth.emplace(u, 0);
  std::size_t expanded = 0;
  while (!queue.empty() && expanded < budget) {
    GVertex cur = std::move(queue.front());
    queue.pop_front();
    const std::size_t d = depth.at(cur);
    if (d >= max_depth) continue;
    ++expanded;
    for (GVertex& next : adjacent(cur)) {
      if (depth.contains(next)) continue;
      depth.emplace(next, d + 1);
      parent.emplace(next, cur);
      if (next == v) {
        std::vector<GVertex> path{next};
        while (!(path.back() == u)) path.push_back(parent.at(path.back()));
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> SchreierGraph::bfs_distance(const GVertex& u, const GVertex& v,
                                                       std::size_t budget) const {
  auto path = shortest_path(u, v, budget);
  if (!path) return std::nullopt;
  return path->size() - 1;
}

ComponentView SchreierGraph::explore_component(const GVertex& v, std::size_t budget) const {
  ComponentView view;
  view.start = v;
  view.budget = budget;
  const std::vector<GVertex> first = adjacent(v);
  view.start_degree = first.size();
  if (budget == 0) {
    view.kind = ComponentKind::Partial;
    view.vertices = {v};
    view.frontier = {v};
    view.size = 1;
    return view;
  }
  std::size_t used = 1;

  // Each direction yields its walk (excluding v) and whether it stopped at a
  // degree-one end, closed a cycle, or ran out of budget.
  enum class Stop { End, Cycle, Budget };
  struct Walk {
    std::vector<GVertex> vertices;
    Stop stop = Stop::End;
  };
  std::vector<Walk> walks;
  for (const GVertex& start_next : first) {
    Walk walk;
    GVertex prev = v;
    GVertex cur = start_next;
    while (true) {
      if (cur == v) {
        walk.stop = Stop::Cycle;
        break;
      }
      walk.vertices.push_back(cur);
      if (used >= budget) {
        walk.stop = Stop::Budget;
        break;
      }
      ++used;
      std::vector<GVertex> adj = adjacent(cur);
      auto it = std::find_if(adj.begin(), adj.end(), [&](const GVertex& x) { return !(x == prev); });
      if (it == adj.end()) {
        walk.stop = Stop::End;
        break;
      }
      prev = std::move(cur);
      cur = std::move(*it);
    }
    const bool cycle = walk.stop == Stop::Cycle;
    walks.push_back(std::move(walk));
    if (cycle) break;
  }
  view.budget_used = used;

  if (!walks.empty() && walks.front().stop == Stop::Cycle) {
    view.kind = ComponentKind::EvenCycle;
    view.vertices.push_back(v);
    view.vertices.insert(view.vertices.end(), walks.front().vertices.begin(), walks.front().vertices.end());
    view.size = view.vertices.size();
    check_component_parity(view);
    return view;
  }

  if (walks.size() == 2) {
    view.vertices.assign(walks[1].vertices.rbegin(), walks[1].vertices.rend());
  }
  view.vertices.push_back(v);
  if (!walks.empty()) {
    view.vertices.insert(view.vertices.end(), walks[0].vertices.begin(), walks[0].vertices.end());
  }
  for (const Walk& walk : walks) {
    if (walk.stop == Stop::Budget) view.frontier.push_back(walk.vertices.back());
  }
  if (view.frontier.empty()) {
    view.kind = ComponentKind::FinitePath;
    view.size = view.vertices.size() - 1;
    check_component_parity(view);
  } else {
    view.kind = ComponentKind::Partial;
    view.size = view.vertices.size();
  }
  return view;
}

SampleReport classify_sample(const SchreierGraph& graph, std::size_t n, std::size_t budget, std::uint64_t seed) {
  SampleReport report;
  report.seed = seed;
  report.samples = n;
  report.budget = budget;
  Rng rng(seed);
  std::unordered_set<GVertex, GVertexHash> degree_one_seen;
  auto note_degree = [&](const GVertex& v, std::map<std::size_t, std::size_t>& counts) {
    const std::size_t deg = graph.degree(v);
    ++counts[deg];
    if (deg == 1 && degree_one_seen.insert(v).second) report.degree_one.push_back(v);
  };
  for (std::size_t k = 0; k < n; ++k) {
    const AlgebraicPoint t = AlgebraicPoint::rational(random_unit_rational(rng));
    const GVertex iv{Side::I, t};
    note_degree(iv, report.degree_counts_i);
    note_degree({Side::J, t + AlgebraicPoint::alpha()}, report.degree_counts_j);
    ComponentView view = graph.explore_component(iv, budget);
    ++report.kind_counts[view.kind];
    if (view.kind != ComponentKind::Partial) {
      report.components.push_back({iv, view.kind, view.size, view.budget_used});
    }
  }
  return report;
}

}  // namespace equidecomp
