#include "equidecomp/pathcert.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <unordered_set>

#include "equidecomp/errors.hpp"
#include "equidecomp/random.hpp"
#include "equidecomp/serialize.hpp"

namespace equidecomp {

namespace {

constexpr std::size_t kConnectorBudget = 16;
constexpr std::size_t kConnectorMaxEdges = 2;

std::int64_t abs_b(const GroupElement& g) { return g.b < 0 ? -g.b : g.b; }

nlohmann::ordered_json step_witness(const GroupElement& g, const AlgebraicPoint& y) {
  nlohmann::ordered_json w;
  w["element"] = to_json(g);
  w["anchor"] = to_json(y);
  w["image"] = to_json(apply(g, y));
  return w;
}

// Per-element slice of a LemmaReport, merged in ball order.
struct ElementResult {
  bool had_anchors = false;
  std::size_t checks = 0;
  std::size_t max_dist = 0;
  std::size_t max_path = 0;
  std::map<std::string, std::size_t> case_counts;
  std::vector<nlohmann::ordered_json> violations;
};

ElementResult check_element(const SchreierGraph& graph, const GroupElement& g, std::size_t samples,
                            std::uint64_t seed, std::size_t budget) {
  ElementResult result;
  const std::vector<AlgebraicPoint> anchors = lemma_anchors(graph.context(), g, samples, seed);
  result.had_anchors = !anchors.empty();
  const std::size_t bound = static_cast<std::size_t>(2 * abs_b(g));
  for (const AlgebraicPoint& y : anchors) {
    ++result.checks;
    const GVertex from{Side::I, y};
    const GVertex to{Side::I, apply(g, y)};
    nlohmann::ordered_json witness = step_witness(g, y);
    witness["bound"] = bound;

    const auto dist = graph.bfs_distance(from, to, budget);
    if (!dist) {
      witness["reason"] = "bfs found no path within budget";
      witness["budget"] = budget;
      result.violations.push_back(std::move(witness));
      continue;
    }
    result.max_dist = std::max(result.max_dist, *dist);
    witness["bfs_distance"] = *dist;
    if (*dist > bound) {
      witness["reason"] = "bfs distance exceeds 2|b|";
      result.violations.push_back(witness);
    }

    try {
      const CertifiedPath path = build_path(graph, g, y);
      for (const ReductionStep& step : path.steps) ++result.case_counts[std::string(to_string(step.which))];
      result.max_path = std::max(result.max_path, path.length);
      if (std::string problem = validate_path(graph, path); !problem.empty()) {
        witness["reason"] = "invalid certified path: " + problem;
        witness["path_length"] = path.length;
        result.violations.push_back(witness);
      } else if (*dist > path.length) {
        witness["reason"] = "bfs distance exceeds certified path length";
        witness["path_length"] = path.length;
        result.violations.push_back(witness);
      }
    } catch (const Finding& finding) {
      witness["reason"] = finding.what();
      witness["finding"] = finding.to_json();
      result.violations.push_back(std::move(witness));
    }
  }
  return result;
}

}  // namespace

std::string_view to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::ShiftUp:
      return "ShiftUp";
    case ReductionCase::ReflectHigh:
      return "ReflectHigh";
    case ReductionCase::ShiftDown:
      return "ShiftDown";
    case ReductionCase::ReflectLow:
      return "ReflectLow";
  }
  return "?";
}

CertifiedPath build_path(const SchreierGraph& graph, const GroupElement& g, const AlgebraicPoint& anchor) {
  const AlphaContext& ctx = graph.context();
  const AlgebraicPoint zero(0);
  const AlgebraicPoint one(1);
  const AlgebraicPoint two_alpha = 2 * AlgebraicPoint::alpha();
  const AlgebraicPoint one_minus_two_alpha = one - two_alpha;
  auto in_unit = [&](const AlgebraicPoint& x) { return ctx.in_interval(x, zero, one, true); };

  if (!in_unit(anchor) || !in_unit(apply(g, anchor))) {
    throw PathError("PreconditionViolated: need y and g(y) in [0, 1] for g = " + to_string(g) +
                    ", y = " + anchor.to_string());
  }

  CertifiedPath path;
  path.element = g;
  path.anchor = anchor;

  GroupElement current = g;
  while (current.b != 0) {
    ReductionStep step;
    step.element = current;
    step.image = apply(current, anchor);
    const AlgebraicPoint& w = step.image;
    if (current.b < 0) {
      if (ctx.less_equal(w, one_minus_two_alpha)) {
        step.which = ReductionCase::ShiftUp;
        step.reduced = compose(element(Generator::T), current);
      } else {
        step.which = ReductionCase::ReflectHigh;
        step.reduced = compose(element(Generator::R2), compose(element(Generator::T), current));
      }
    } else {
      if (ctx.less(two_alpha, w)) {
        step.which = ReductionCase::ShiftDown;
        step.reduced = compose(inverse(element(Generator::T)), current);
      } else {
        step.which = ReductionCase::ReflectLow;
        step.reduced = compose(element(Generator::R2a), current);
      }
    }
    if (abs_b(step.reduced) != abs_b(current) - 1) {
      throw Finding(FindingKind::LemmaViolation, "reduction did not lower |b| by one", step_witness(current, anchor));
    }
    step.intermediate = apply(step.reduced, anchor);
    if (!in_unit(step.intermediate)) {
      nlohmann::ordered_json witness = step_witness(current, anchor);
      witness["case"] = to_string(step.which);
      witness["intermediate"] = to_json(step.intermediate);
      witness["root_element"] = to_json(g);
      throw Finding(FindingKind::IntermediateOutOfRange,
                    "intermediate point " + step.intermediate.to_string() + " lies outside [0, 1]", witness);
    }
    current = step.reduced;
    path.steps.push_back(std::move(step));
  }

  if (!(apply(current, anchor) == anchor)) {
    nlohmann::ordered_json witness = step_witness(current, anchor);
    witness["root_element"] = to_json(g);
    throw Finding(FindingKind::LemmaViolation, "|b| = 0 element does not fix the anchor", witness);
  }

  path.vertices.push_back({Side::I, anchor});
  for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) {
    const GVertex from{Side::I, it->intermediate};
    const GVertex to{Side::I, it->image};
    auto connector = graph.shortest_path(from, to, kConnectorBudget, kConnectorMaxEdges);
    if (!connector) {
      nlohmann::ordered_json witness = step_witness(it->element, anchor);
      witness["case"] = to_string(it->which);
      witness["intermediate"] = to_json(it->intermediate);
      witness["root_element"] = to_json(g);
      throw Finding(FindingKind::ConnectorMissing,
                    "no path of at most two edges from " + it->intermediate.to_string() + " to " +
                        it->image.to_string(),
                    witness);
    }
    it->connector = *connector;
    path.vertices.insert(path.vertices.end(), connector->begin() + 1, connector->end());
  }
  path.length = path.vertices.size() - 1;
  return path;
}

std::string validate_path(const SchreierGraph& graph, const CertifiedPath& path) {
  if (path.vertices.empty()) return "empty vertex list";
  if (path.length + 1 != path.vertices.size()) return "length does not match vertex count";
  if (!(path.vertices.front() == GVertex{Side::I, path.anchor})) return "does not start at (I, y)";
  if (!(path.vertices.back() == GVertex{Side::I, apply(path.element, path.anchor)})) return "does not end at (I, g(y))";
  for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
    if (!graph.is_edge(path.vertices[k], path.vertices[k + 1])) {
      return "vertices " + std::to_string(k) + " and " + std::to_string(k + 1) + " are not adjacent";
    }
  }
  if (path.length > static_cast<std::size_t>(2 * abs_b(path.element))) return "length exceeds 2|b|";
  return {};
}

std::optional<AnchorInterval> anchor_interval(const AlphaContext& ctx, const GroupElement& g) {
  // g(y) = a*y + k; solve 0 <= g(y) <= 1 for y and intersect with [0, 1].
  const AlgebraicPoint k = apply(g, AlgebraicPoint(0));
  AlgebraicPoint lo = g.a > 0 ? -k : k - AlgebraicPoint(1);
  AlgebraicPoint hi = g.a > 0 ? AlgebraicPoint(1) - k : k;
  if (ctx.less(lo, AlgebraicPoint(0))) lo = AlgebraicPoint(0);
  if (ctx.less(AlgebraicPoint(1), hi)) hi = AlgebraicPoint(1);
  if (ctx.less(hi, lo)) return std::nullopt;
  return AnchorInterval{std::move(lo), std::move(hi)};
}

std::vector<AlgebraicPoint> lemma_anchors(const AlphaContext& ctx, const GroupElement& g, std::size_t n,
                                          std::uint64_t seed) {
  std::vector<AlgebraicPoint> anchors;
  if (n == 0) return anchors;
  const auto interval = anchor_interval(ctx, g);
  if (!interval) return anchors;
  const auto& [lo, hi] = *interval;

  std::unordered_set<AlgebraicPoint> seen;
  auto add = [&](const AlgebraicPoint& y) {
    if (anchors.size() >= n) return;
    if (!ctx.in_interval(y, lo, hi, true)) return;
    if (seen.insert(y).second) anchors.push_back(y);
  };
  add(lo);
  add(hi);
  if (lo == hi) return anchors;

  const GroupElement g_inv = inverse(g);
  const AlgebraicPoint two_alpha = 2 * AlgebraicPoint::alpha();
  const Rational nudge(1, 1000);
  for (const AlgebraicPoint& threshold : {two_alpha, AlgebraicPoint(1) - two_alpha}) {
    for (int sgn : {0, -1, 1}) {
      add(apply(g_inv, threshold + AlgebraicPoint::rational(nudge * sgn)));
    }
  }

  const AlgebraicPoint width = hi - lo;
  const std::size_t grid = std::max<std::size_t>(n / 2, 2);
  for (std::size_t k = 1; k < grid && anchors.size() < n; ++k) {
    Rational step(static_cast<long>(k), static_cast<long>(grid));
    step.canonicalize();
    add(lo + width * step);
  }
  Rng rng(seed);
  // The interval has positive width, so random rationals eventually fill it.
  for (std::size_t attempts = 0; anchors.size() < n && attempts < 64 * n; ++attempts) {
    add(lo + width * random_unit_rational(rng));
  }
  return anchors;
}

LemmaReport verify_lemma(const SchreierGraph& graph, int radius, std::size_t samples, std::uint64_t seed,
                         std::size_t budget, unsigned threads) {
  LemmaReport report;
  report.alpha = graph.context().spec();
  report.radius = radius;
  report.samples = samples;
  report.seed = seed;
  report.budget = budget;
  const std::vector<GroupElement> ball = enumerate_ball(radius);
  report.ball_size = ball.size();

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(ball.size(), 1)));

  std::vector<ElementResult> results(ball.size());
  auto worker = [&](std::size_t first) {
    for (std::size_t k = first; k < ball.size(); k += threads) {
      results[k] = check_element(graph, ball[k], samples, derive_seed(seed, k), budget);
    }
  };
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, worker, t));
  for (auto& job : jobs) job.get();

  for (std::size_t k = 0; k < ball.size(); ++k) {
    const std::int64_t b = abs_b(ball[k]);
    ElementResult& r = results[k];
    if (!r.had_anchors) continue;
    ++report.elements_with_anchors;
    report.checks += r.checks;
    auto& md = report.max_dist_by_b[b];
    md = std::max(md, r.max_dist);
    auto& mp = report.max_path_by_b[b];
    mp = std::max(mp, r.max_path);
    for (const auto& [name, count] : r.case_counts) report.case_counts[name] += count;
    for (auto& v : r.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

}  // namespace equidecomp
