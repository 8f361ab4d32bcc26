#include "equidecomp/serialize.hpp"

#include "equidecomp/errors.hpp"
#include "equidecomp/graph.hpp"
#include "equidecomp/pathcert.hpp"

namespace equidecomp {

std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::EvenPathComponent:
      return "EvenPathComponent";
    case FindingKind::OddCycleComponent:
      return "OddCycleComponent";
    case FindingKind::ConnectorMissing:
      return "ConnectorMissing";
    case FindingKind::IntermediateOutOfRange:
      return "IntermediateOutOfRange";
    case FindingKind::LemmaViolation:
      return "LemmaViolation";
    case FindingKind::Claim1Violation:
      return "Claim1Violation";
    case FindingKind::ExtractionFailure:
      return "ExtractionFailure";
  }
  return "?";
}

nlohmann::ordered_json Finding::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind_);
  j["message"] = what();
  j["witness"] = witness_;
  return j;
}

Json to_json(const Rational& q) { return q.get_str(10); }

Json to_json(const AlgebraicPoint& x) {
  Json j;
  j["u"] = to_json(x.u());
  j["v"] = to_json(x.v());
  return j;
}

Json to_json(const AlphaSpec& spec) {
  Json j;
  j["p"] = spec.p;
  j["q"] = spec.q;
  j["d"] = spec.d;
  j["r"] = spec.r;
  return j;
}

Json to_json(const GroupElement& g) { return Json::array({g.a, g.b, g.c}); }

Json to_json(const GVertex& v) {
  Json j;
  j["side"] = to_string(v.side);
  j["u"] = to_json(v.point.u());
  j["v"] = to_json(v.point.v());
  return j;
}

Json to_json(const ComponentView& view, bool include_vertices) {
  Json j;
  j["kind"] = to_string(view.kind);
  j["start"] = to_json(view.start);
  j["start_degree"] = view.start_degree;
  j["size"] = view.size;
  j["vertex_count"] = view.vertices.size();
  j["budget"] = view.budget;
  j["budget_used"] = view.budget_used;
  Json frontier = Json::array();
  for (const GVertex& v : view.frontier) frontier.push_back(to_json(v));
  j["frontier"] = std::move(frontier);
  if (include_vertices) {
    Json vertices = Json::array();
    for (const GVertex& v : view.vertices) vertices.push_back(to_json(v));
    j["vertices"] = std::move(vertices);
  }
  return j;
}

Json component_witness(const ComponentView& view) {
  Json j;
  j["kind"] = to_string(view.kind);
  j["size"] = view.size;
  j["start"] = to_json(view.start);
  if (!view.vertices.empty()) {
    j["first"] = to_json(view.vertices.front());
    j["last"] = to_json(view.vertices.back());
  }
  return j;
}

Json to_json(const SampleReport& report) {
  Json j;
  j["seed"] = report.seed;
  j["samples"] = report.samples;
  j["budget"] = report.budget;
  auto counts = [](const std::map<std::size_t, std::size_t>& m) {
    Json c = Json::object();
    for (const auto& [deg, n] : m) c[std::to_string(deg)] = n;
    return c;
  };
  j["degree_counts_I"] = counts(report.degree_counts_i);
  j["degree_counts_J"] = counts(report.degree_counts_j);
  Json ones = Json::array();
  for (const GVertex& v : report.degree_one) ones.push_back(to_json(v));
  j["degree_one"] = std::move(ones);
  Json kinds = Json::object();
  for (ComponentKind k : {ComponentKind::EvenCycle, ComponentKind::FinitePath, ComponentKind::Partial}) {
    const auto it = report.kind_counts.find(k);
    kinds[std::string(to_string(k))] = it == report.kind_counts.end() ? 0 : it->second;
  }
  j["component_kinds"] = std::move(kinds);
  Json finished = Json::array();
  for (const ComponentRecord& r : report.components) {
    Json rec;
    rec["start"] = to_json(r.start);
    rec["kind"] = to_string(r.kind);
    rec["size"] = r.size;
    rec["budget"] = report.budget;
    finished.push_back(std::move(rec));
  }
  j["finished_components"] = std::move(finished);
  return j;
}

Json to_json(const CertifiedPath& path) {
  Json j;
  j["element"] = to_json(path.element);
  j["anchor"] = to_json(path.anchor);
  j["length"] = path.length;
  Json steps = Json::array();
  for (const ReductionStep& s : path.steps) {
    Json step;
    step["element"] = to_json(s.element);
    step["case"] = to_string(s.which);
    step["reduced"] = to_json(s.reduced);
    step["intermediate"] = to_json(s.intermediate);
    step["connector_edges"] = s.connector.empty() ? 0 : s.connector.size() - 1;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  Json vertices = Json::array();
  for (const GVertex& v : path.vertices) vertices.push_back(to_json(v));
  j["vertices"] = std::move(vertices);
  return j;
}

Json to_json(const LemmaReport& report) {
  Json j;
  j["alpha"] = to_json(report.alpha);
  j["ball_radius"] = report.radius;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  j["bfs_budget"] = report.budget;
  j["ball_size"] = report.ball_size;
  j["elements_with_anchors"] = report.elements_with_anchors;
  j["checks"] = report.checks;
  j["violations"] = Json::array();
  for (const Json& v : report.violations) j["violations"].push_back(v);
  Json dist = Json::object();
  for (const auto& [b, d] : report.max_dist_by_b) dist[std::to_string(b)] = d;
  j["max_dist_by_b"] = std::move(dist);
  Json len = Json::object();
  for (const auto& [b, d] : report.max_path_by_b) len[std::to_string(b)] = d;
  j["max_path_by_b"] = std::move(len);
  Json cases = Json::object();
  for (const auto& [name, n] : report.case_counts) cases[name] = n;
  j["case_counts"] = std::move(cases);
  return j;
}

AlgebraicPoint point_from_json(const Json& j) {
  return {parse_rational(j.at("u").get<std::string>()), parse_rational(j.at("v").get<std::string>())};
}

}  // namespace equidecomp
