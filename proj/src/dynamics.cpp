#include "equidecomp/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "equidecomp/errors.hpp"
#include "equidecomp/random.hpp"
#include "equidecomp/serialize.hpp"

namespace equidecomp {

namespace {

Coord distance(Coord x, Coord y) { return x > y ? x - y : y - x; }

Json pair_witness(const RewiredPair& p, int k) {
  Json j;
  j["path"] = p.a.path;
  j["a"] = p.a.coord;
  j["a_prime"] = p.a_prime.coord;
  j["old"] = Json::array({p.old_a, p.old_a_prime});
  j["new"] = Json::array({p.new_a, p.new_a_prime});
  j["K"] = k;
  return j;
}

}  // namespace

std::string matching_problem(int k, std::span<const PathMatching> paths) {
  if (k <= 0 || k % 2 == 0) return "K must be an odd positive integer";
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const PathMatching& pm = paths[p];
    const std::string where = "path " + std::to_string(p) + ": ";
    if (!is_class_a(pm.lo) || is_class_a(pm.hi)) return where + "window must start even and end odd";
    if (pm.hi < pm.lo - 1) return where + "window bounds reversed";
    const auto count = static_cast<std::size_t>((pm.hi - pm.lo + 1) / 2);
    if (pm.partner.size() != count) return where + "partner table size does not match window";
    std::vector<bool> used(count, false);
    for (std::size_t i = 0; i < count; ++i) {
      const Coord a = pm.lo + 2 * static_cast<Coord>(i);
      const Coord m = pm.partner[i];
      if (is_class_a(m) || m < pm.lo || m > pm.hi) {
        return where + "M(" + std::to_string(a) + ") = " + std::to_string(m) + " is not a window B-vertex";
      }
      if (distance(a, m) > k) {
        return where + "M(" + std::to_string(a) + ") = " + std::to_string(m) + " is farther than K";
      }
      const auto j = static_cast<std::size_t>((m - pm.lo - 1) / 2);
      if (used[j]) return where + "B-vertex " + std::to_string(m) + " matched twice";
      used[j] = true;
    }
  }
  return {};
}

KMatching::KMatching(int k, std::vector<PathMatching> paths) : k_(k), paths_(std::move(paths)) {
  if (k_ <= 0 || k_ % 2 == 0) {
    throw DynamicsError(DynamicsError::Kind::InvalidK, "K must be an odd positive integer, got " + std::to_string(k_));
  }
  if (std::string problem = matching_problem(k_, paths_); !problem.empty()) {
    throw DynamicsError(DynamicsError::Kind::InvalidMatching, problem);
  }
  b_partner_.reserve(paths_.size());
  for (const PathMatching& pm : paths_) {
    std::vector<Coord> inv(pm.partner.size());
    for (std::size_t i = 0; i < pm.partner.size(); ++i) {
      inv[static_cast<std::size_t>((pm.partner[i] - pm.lo - 1) / 2)] = pm.lo + 2 * static_cast<Coord>(i);
    }
    b_partner_.push_back(std::move(inv));
  }
}

KMatching KMatching::standard(int k, Coord width, std::size_t path_count) {
  if (width < 0 || width % 2 != 0) {
    throw DynamicsError(DynamicsError::Kind::InvalidWindow, "window width must be even and non-negative");
  }
  std::vector<PathMatching> paths(path_count);
  for (PathMatching& pm : paths) {
    pm.lo = 0;
    pm.hi = width - 1;
    for (Coord a = 0; a < width; a += 2) pm.partner.push_back(a + 1);
  }
  return {k, std::move(paths)};
}

Coord KMatching::partner(const PathVertex& x) const {
  const PathMatching& pm = paths_.at(x.path);
  if (x.coord < pm.lo || x.coord > pm.hi) return is_class_a(x.coord) ? x.coord + 1 : x.coord - 1;
  const auto index = static_cast<std::size_t>((x.coord - pm.lo) / 2);
  return is_class_a(x.coord) ? pm.partner[index] : b_partner_[x.path][index];
}

bool KMatching::is_standard() const {
  for (const PathMatching& pm : paths_) {
    for (std::size_t i = 0; i < pm.partner.size(); ++i) {
      if (pm.partner[i] != pm.lo + 2 * static_cast<Coord>(i) + 1) return false;
    }
  }
  return true;
}

std::int64_t cost(const KMatching& m) {
  std::int64_t total = 0;
  for (const PathMatching& pm : m.paths()) {
    for (std::size_t i = 0; i < pm.partner.size(); ++i) {
      total += distance(pm.lo + 2 * static_cast<Coord>(i), pm.partner[i]) - 1;
    }
  }
  return total;
}

Ray ray(const KMatching& m, const PathVertex& x) { return {x, m.direction(x)}; }

bool phi(const KMatching& m, const PathVertex& x, const PathVertex& y) {
  if (x.path != y.path || !is_class_a(x.coord) || !is_class_a(y.coord)) return false;
  if (distance(x.coord, y.coord) != 2) return false;
  return m.direction(x) == (y.coord > x.coord ? 1 : -1) && m.direction(y) == (x.coord > y.coord ? 1 : -1);
}

std::vector<PathVertex> compute_S(const KMatching& m) {
  std::vector<PathVertex> s;
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    const PathMatching& pm = m.path(p);
    // Outside the window every ray points up, so a facing pair needs its
    // upper member inside; scanning one step beyond each end covers all pairs.
    for (Coord a = pm.lo - 2; a <= pm.hi + 1; a += 2) {
      const PathVertex x{p, a};
      if (phi(m, x, {p, a - 2}) || phi(m, x, {p, a + 2})) s.push_back(x);
    }
  }
  return s;
}

ImproveStep improve_step(const KMatching& m) {
  std::vector<RewiredPair> pairs;
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    const PathMatching& pm = m.path(p);
    for (Coord a = pm.lo - 2; a <= pm.hi + 1; a += 2) {
      const PathVertex x{p, a};
      const PathVertex y{p, a + 2};
      if (!phi(m, x, y)) continue;
      RewiredPair pair;
      pair.a = x;
      pair.a_prime = y;
      pair.old_a = m.partner(x);
      pair.old_a_prime = m.partner(y);
      pair.new_a = pair.old_a_prime;
      pair.new_a_prime = pair.old_a;
      pairs.push_back(pair);
    }
  }
  if (pairs.empty()) throw DynamicsError(DynamicsError::Kind::EmptyS, "S(M) is empty; nothing to improve");

  std::vector<PathMatching> paths = m.paths();
  for (const RewiredPair& pair : pairs) {
    const Coord before = distance(pair.a.coord, pair.old_a) + distance(pair.a_prime.coord, pair.old_a_prime);
    const Coord after = distance(pair.a.coord, pair.new_a) + distance(pair.a_prime.coord, pair.new_a_prime);
    const bool within_k = distance(pair.a.coord, pair.new_a) <= m.k() && distance(pair.a_prime.coord, pair.new_a_prime) <= m.k();
    if (!within_k || after > before - 2) {
      Json witness = pair_witness(pair, m.k());
      witness["before"] = before;
      witness["after"] = after;
      throw Finding(FindingKind::Claim1Violation,
                    within_k ? "rewired pair did not shorten by two" : "rewired pair exceeds K", witness);
    }
    PathMatching& pm = paths[pair.a.path];
    if (pair.a.coord < pm.lo || pair.a_prime.coord > pm.hi) {
      throw Finding(FindingKind::Claim1Violation, "phi-pair reaches outside the deviation window",
                    pair_witness(pair, m.k()));
    }
    pm.partner[static_cast<std::size_t>((pair.a.coord - pm.lo) / 2)] = pair.new_a;
    pm.partner[static_cast<std::size_t>((pair.a_prime.coord - pm.lo) / 2)] = pair.new_a_prime;
  }
  if (std::string problem = matching_problem(m.k(), paths); !problem.empty()) {
    Json witness;
    witness["problem"] = problem;
    witness["pairs"] = Json::array();
    for (const RewiredPair& pair : pairs) witness["pairs"].push_back(pair_witness(pair, m.k()));
    throw Finding(FindingKind::Claim1Violation, "rewired matching is invalid: " + problem, witness);
  }
  return {KMatching(m.k(), std::move(paths)), std::move(pairs)};
}

KMatching improve(const KMatching& m) { return improve_step(m).next; }

std::int64_t DynamicsTrace::total_s() const {
  return std::accumulate(records.begin(), records.end(), std::int64_t{0},
                         [](std::int64_t acc, const TraceRecord& r) { return acc + static_cast<std::int64_t>(r.s_size); });
}

DynamicsResult run_dynamics(const KMatching& m0, std::size_t max_iters) {
  DynamicsTrace trace;
  KMatching current = m0;
  for (std::size_t n = 1;; ++n) {
    const std::vector<PathVertex> s = compute_S(current);
    const std::int64_t c = cost(current);
    trace.records.push_back({n, s.size(), c, s.size() / 2});
    if (s.empty()) break;
    if (n > max_iters) {
      throw DynamicsError(DynamicsError::Kind::IterationCap,
                          "dynamics still improving after " + std::to_string(max_iters) + " iterations");
    }
    ImproveStep step = improve_step(current);
    const std::int64_t next_cost = cost(step.next);
    if (next_cost > c - static_cast<std::int64_t>(s.size())) {
      Json witness;
      witness["iteration"] = n;
      witness["cost_before"] = c;
      witness["cost_after"] = next_cost;
      witness["S_size"] = s.size();
      throw Finding(FindingKind::Claim1Violation, "cost did not drop by |S|", witness);
    }
    current = std::move(step.next);
  }
  return {std::move(current), std::move(trace)};
}

bool check_nested_rays(const KMatching& m) {
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    const PathMatching& pm = m.path(p);
    // Vertices outside the window point up.
    for (Coord a = pm.lo; a <= pm.hi; a += 2) {
      if (m.direction({p, a}) != 1) return false;
    }
  }
  return true;
}

KMatching extract_matching(const KMatching& m) {
  const std::vector<PathVertex> s = compute_S(m);
  if (!s.empty()) {
    throw DynamicsError(DynamicsError::Kind::SNotEmpty,
                        "S(M) has " + std::to_string(s.size()) + " vertices; run the dynamics first");
  }
  std::vector<PathMatching> paths;
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    PathMatching out = m.path(p);
    for (std::size_t i = 0; i < out.partner.size(); ++i) {
      const Coord a = out.lo + 2 * static_cast<Coord>(i);
      out.partner[i] = a + m.direction({p, a});
    }
    paths.push_back(std::move(out));
  }
  if (std::string problem = matching_problem(1, paths); !problem.empty()) {
    Json witness;
    witness["problem"] = problem;
    throw Finding(FindingKind::ExtractionFailure, "extracted edges are not a perfect matching of H: " + problem,
                  witness);
  }
  return {1, std::move(paths)};
}

KMatching random_kmatching(Coord window, int k, std::uint64_t seed, std::size_t transpositions,
                           std::size_t path_count) {
  if (k <= 0 || k % 2 == 0) {
    throw DynamicsError(DynamicsError::Kind::InvalidK, "K must be an odd positive integer, got " + std::to_string(k));
  }
  if (window < k || window % 2 != 0) {
    throw DynamicsError(DynamicsError::Kind::InvalidWindow,
                        "window must be even and at least K, got " + std::to_string(window));
  }
  KMatching base = KMatching::standard(k, window, path_count);
  std::vector<PathMatching> paths = base.paths();
  if (path_count == 0) return base;
  Rng rng(seed);
  const auto slots = static_cast<std::uint64_t>(window / 2);
  const auto reach = static_cast<std::int64_t>((k + 1) / 2);
  for (std::size_t t = 0; t < transpositions; ++t) {
    PathMatching& pm = paths[uniform_below(rng, path_count)];
    const auto i = static_cast<std::int64_t>(uniform_below(rng, slots));
    const std::int64_t j = i + uniform_between(rng, 1, reach);
    if (j >= static_cast<std::int64_t>(slots)) continue;
    const Coord ai = pm.lo + 2 * i;
    const Coord aj = pm.lo + 2 * j;
    auto& mi = pm.partner[static_cast<std::size_t>(i)];
    auto& mj = pm.partner[static_cast<std::size_t>(j)];
    if (distance(ai, mj) <= k && distance(aj, mi) <= k) std::swap(mi, mj);
  }
  return {k, std::move(paths)};
}

ComponentChart ComponentChart::build(const SchreierGraph& graph, const AlgebraicPoint& anchor, Coord radius) {
  if (radius < 0) throw GraphError("chart radius must be non-negative");
  ComponentChart chart(graph, radius);
  const GVertex start{Side::I, anchor};
  const std::vector<GVertex> first = graph.adjacent(start);
  if (radius > 0 && first.size() < 2) {
    throw GraphError("chart anchor " + anchor.to_string() + " has degree one");
  }
  std::vector<std::vector<GVertex>> arms(2);
  for (std::size_t dir = 0; dir < 2 && radius > 0; ++dir) {
    GVertex prev = start;
    GVertex cur = first[dir];
    arms[dir].push_back(cur);
    while (static_cast<Coord>(arms[dir].size()) < radius) {
      std::vector<GVertex> adj = graph.adjacent(cur);
      auto it = std::find_if(adj.begin(), adj.end(), [&](const GVertex& x) { return !(x == prev); });
      if (it == adj.end()) throw GraphError("component ends within chart radius");
      if (*it == start) throw GraphError("component closes into a cycle within chart radius");
      prev = std::move(cur);
      cur = std::move(*it);
      arms[dir].push_back(cur);
    }
  }
  chart.vertices_.assign(arms[1].rbegin(), arms[1].rend());
  chart.vertices_.push_back(start);
  chart.vertices_.insert(chart.vertices_.end(), arms[0].begin(), arms[0].end());
  for (std::size_t i = 0; i < chart.vertices_.size(); ++i) {
    if (!chart.index_.emplace(chart.vertices_[i], static_cast<Coord>(i) - radius).second) {
      throw GraphError("component closes into a cycle within chart radius");
    }
  }
  return chart;
}

const GVertex& ComponentChart::vertex(Coord x) const {
  if (x < lo() || x > hi()) throw GraphError("coordinate " + std::to_string(x) + " is outside the chart");
  return vertices_[static_cast<std::size_t>(x + radius_)];
}

std::optional<Coord> ComponentChart::coord_of(const GVertex& v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroupElement ComponentChart::element_between(Coord from, Coord to) const {
  GroupElement total = GroupElement::identity();
  const Coord step = to > from ? 1 : -1;
  for (Coord x = from; x != to; x += step) {
    const GVertex& u = vertex(x);
    const GVertex& w = vertex(x + step);
    const GVertex& i_end = u.side == Side::I ? u : w;
    const GVertex& j_end = u.side == Side::I ? w : u;
    std::optional<GroupElement> hop;
    for (Generator gen : kGenerators) {
      if (apply(element(gen), i_end.point) == j_end.point) {
        hop = u.side == Side::I ? element(gen) : inverse(element(gen));
        break;
      }
    }
    if (!hop) throw GraphError("chart vertices " + std::to_string(x) + " and " + std::to_string(x + step) + " are not adjacent");
    total = compose(*hop, total);
  }
  return total;
}

KMatching kmatching_from_assignment(const ComponentChart& chart, std::span<const AssignmentPiece> pieces) {
  auto fail = [](const std::string& why) {
    return DynamicsError(DynamicsError::Kind::NotAMatching, "assignment is not a matching: " + why);
  };
  if (pieces.empty()) throw fail("no pieces");
  std::map<Coord, GroupElement> moved;
  std::int64_t max_b = 0;
  for (const AssignmentPiece& piece : pieces) {
    if (piece.hi < piece.lo) throw fail("piece with hi < lo");
    max_b = std::max<std::int64_t>(max_b, piece.element.b < 0 ? -piece.element.b : piece.element.b);
    const Coord first = is_class_a(piece.lo) ? piece.lo : piece.lo + 1;
    for (Coord a = first; a <= piece.hi; a += 2) {
      if (!moved.emplace(a, piece.element).second) throw fail("pieces overlap at " + std::to_string(a));
    }
  }
  if (moved.empty()) throw fail("pieces cover no A-coordinate");
  const Coord lo = moved.begin()->first;
  const Coord hi = moved.rbegin()->first + 1;
  if (static_cast<Coord>(moved.size()) != (hi - lo + 1) / 2) throw fail("pieces leave a gap");

  const int k = bridge_k_bound(static_cast<int>(max_b));
  PathMatching pm;
  pm.lo = lo;
  pm.hi = hi;
  for (const auto& [a, g] : moved) {
    const GVertex& x = chart.vertex(a);
    const auto target = chart.coord_of({Side::J, apply(g, x.point)});
    if (!target) throw fail("image of " + std::to_string(a) + " is not a J-vertex of the chart");
    pm.partner.push_back(*target);
  }
  std::vector<PathMatching> paths{std::move(pm)};
  if (std::string problem = matching_problem(k, paths); !problem.empty()) throw fail(problem);
  return {k, std::move(paths)};
}

std::vector<AssignmentPiece> assignment_for(const ComponentChart& chart, const KMatching& m) {
  if (m.path_count() != 1) throw GraphError("a chart carries exactly one path");
  const PathMatching& pm = m.path(0);
  std::vector<AssignmentPiece> pieces;
  for (std::size_t i = 0; i < pm.partner.size(); ++i) {
    const Coord a = pm.lo + 2 * static_cast<Coord>(i);
    const GroupElement g = chart.element_between(a, pm.partner[i]);
    if (!pieces.empty() && pieces.back().element == g) {
      pieces.back().hi = a;
    } else {
      pieces.push_back({a, a, g});
    }
  }
  return pieces;
}

}  // namespace equidecomp
