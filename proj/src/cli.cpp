#include "equidecomp/cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "equidecomp/dynamics.hpp"
#include "equidecomp/errors.hpp"
#include "equidecomp/figure.hpp"
#include "equidecomp/pathcert.hpp"
#include "equidecomp/random.hpp"
#include "equidecomp/version.hpp"

namespace equidecomp {

namespace {

constexpr const char* kExploreFile = "explore.json";
constexpr const char* kLemmaFile = "lemma.json";
constexpr const char* kDynamicsFile = "dynamics.json";
constexpr const char* kTraceFile = "dynamics_trace.csv";
constexpr const char* kFigureSvg = "figure.svg";
constexpr const char* kFigureFile = "figure.json";
constexpr const char* kReportFile = "report.json";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  text = trim(text);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config key '" + std::string(key) + "': not a valid number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view text) {
  std::vector<int> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number<int>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Json header(const RunConfig& config, std::string_view command) {
  Json j;
  j["tool"] = "equidecomp";
  j["version"] = tool_version();
  j["command"] = command;
  j["config"] = config_to_json(config);
  return j;
}

std::filesystem::path prepare_output(const RunConfig& config, const char* name) {
  std::filesystem::create_directories(config.output_dir);
  return config.output_dir / name;
}

// Runs a command body, mapping usage errors to exit status 2 and findings
// that escape the body to exit status 3.
int guarded(std::string_view command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Finding& finding) {
    std::cerr << command << ": finding " << to_string(finding.kind()) << ": " << finding.what() << '\n';
    return kExitFinding;
  } catch (const Error& error) {
    std::cerr << command << ": " << error.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& error) {
    std::cerr << command << ": " << error.what() << '\n';
    return kExitUsage;
  }
}

Json edge_json(const GEdge& e) {
  Json j;
  j["i"] = to_json(e.i_point);
  j["j"] = to_json(e.j_point);
  Json labels = Json::array();
  for (Generator g : e.labels) labels.push_back(to_string(g));
  j["labels"] = std::move(labels);
  return j;
}

Json pairs_json(const KMatching& m) {
  // Non-standard pairs only; every other A-vertex a is matched to a + 1.
  Json out = Json::array();
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    const PathMatching& pm = m.path(p);
    for (std::size_t i = 0; i < pm.partner.size(); ++i) {
      const Coord a = pm.lo + 2 * static_cast<Coord>(i);
      if (pm.partner[i] != a + 1) out.push_back(Json::array({p, a, pm.partner[i]}));
    }
  }
  return out;
}

struct RunAudit {
  std::int64_t initial_cost = 0;
  std::size_t iterations = 0;
  std::int64_t total_s = 0;
  bool nested = false;
  bool extracted_standard = false;
  std::vector<std::string> problems;
  std::vector<TraceRecord> trace;
  KMatching final_matching = KMatching::standard(1, 0);
};

// Runs the dynamics step by step and re-checks every invariant the CLI promises.
RunAudit audit_dynamics(const KMatching& m0) {
  RunAudit audit;
  audit.initial_cost = cost(m0);
  const std::size_t cap = static_cast<std::size_t>(audit.initial_cost);
  KMatching current = m0;
  for (std::size_t n = 1;; ++n) {
    const std::vector<PathVertex> s = compute_S(current);
    const std::int64_t c = cost(current);
    audit.trace.push_back({n, s.size(), c, s.size() / 2});
    audit.total_s += static_cast<std::int64_t>(s.size());
    if (s.empty()) break;
    if (audit.iterations >= cap) {
      audit.problems.push_back("iteration count exceeds cost(M0)");
      break;
    }
    ImproveStep step = improve_step(current);
    ++audit.iterations;
    if (step.pairs.size() * 2 != s.size()) audit.problems.push_back("rewired pairs do not partition S");
    for (const RewiredPair& pair : step.pairs) {
      const Coord before = std::abs(pair.a.coord - pair.old_a) + std::abs(pair.a_prime.coord - pair.old_a_prime);
      const Coord after = std::abs(pair.a.coord - pair.new_a) + std::abs(pair.a_prime.coord - pair.new_a_prime);
      if (after > before - 2) audit.problems.push_back("pair inequality with constant -2 fails");
    }
    if (cost(step.next) > c - static_cast<std::int64_t>(s.size())) audit.problems.push_back("cost drop below |S|");
    for (std::size_t p = 0; p < current.path_count(); ++p) {
      if (step.next.path(p).lo != current.path(p).lo || step.next.path(p).hi != current.path(p).hi) {
        audit.problems.push_back("vertex set changed");
      }
    }
    current = std::move(step.next);
  }
  if (audit.total_s > audit.initial_cost) audit.problems.push_back("sum of |S| exceeds cost(M0)");
  audit.nested = check_nested_rays(current);
  if (!audit.nested) audit.problems.push_back("rays not nested after convergence");
  const KMatching h = extract_matching(current);
  audit.extracted_standard = h.is_standard();
  if (!audit.extracted_standard) audit.problems.push_back("extracted matching is not the standard one");
  audit.final_matching = std::move(current);
  return audit;
}

Json audit_json(const RunAudit& audit) {
  Json j;
  j["initial_cost"] = audit.initial_cost;
  j["iterations"] = audit.iterations;
  j["total_S"] = audit.total_s;
  j["nested_rays"] = audit.nested;
  j["extracted_standard"] = audit.extracted_standard;
  j["final_nonstandard_pairs"] = pairs_json(audit.final_matching);
  j["problems"] = audit.problems;
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("missing input " + path.string() + "; run the corresponding command first");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
}

}  // namespace

std::string_view tool_version() { return kEquidecompVersion; }

int run_command(std::string_view command, const std::function<int()>& body) { return guarded(command, body); }

RunConfig parse_config(std::string_view text, RunConfig base) {
  RunConfig config = std::move(base);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "alpha") {
      try {
        config.alpha = parse_alpha_spec(value);
      } catch (const AlgebraError& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "ball_radius") {
      config.ball_radius = parse_number<int>(key, value);
    } else if (key == "samples") {
      config.samples = parse_number<std::size_t>(key, value);
    } else if (key == "bfs_budget") {
      config.bfs_budget = parse_number<std::size_t>(key, value);
    } else if (key == "explore.samples") {
      config.explore_samples = parse_number<std::size_t>(key, value);
    } else if (key == "dynamics.K") {
      config.dynamics.ks = parse_int_list(key, value);
    } else if (key == "dynamics.window") {
      config.dynamics.window = parse_number<std::int64_t>(key, value);
    } else if (key == "dynamics.instances") {
      config.dynamics.instances = parse_number<std::size_t>(key, value);
    } else if (key == "dynamics.transpositions") {
      config.dynamics.transpositions = parse_number<std::size_t>(key, value);
    } else if (key == "dynamics.bridge_instances") {
      config.dynamics.bridge_instances = parse_number<std::size_t>(key, value);
    } else if (key == "dynamics.bridge_window") {
      config.dynamics.bridge_window = parse_number<std::int64_t>(key, value);
    } else if (key == "output_dir") {
      config.output_dir = std::string(value);
    } else if (key == "threads") {
      config.threads = parse_number<unsigned>(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  validate_config(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

void validate_config(const RunConfig& config) {
  try {
    (void)AlphaContext::make(config.alpha);
  } catch (const AlgebraError& e) {
    throw ConfigError(e.what());
  }
  if (config.ball_radius < 0 || config.ball_radius > kMaxBallRadius) {
    throw ConfigError("ball_radius must be in [0, " + std::to_string(kMaxBallRadius) + "], got " +
                      std::to_string(config.ball_radius));
  }
  const DynamicsConfig& d = config.dynamics;
  if (d.ks.empty()) throw ConfigError("dynamics.K must list at least one value");
  for (int k : d.ks) {
    if (k <= 0 || k % 2 == 0) throw ConfigError("dynamics.K entries must be odd and positive, got " + std::to_string(k));
    if (d.window < k) throw ConfigError("dynamics.window must be at least every K");
    if (d.bridge_window < k) throw ConfigError("dynamics.bridge_window must be at least every K");
  }
  if (d.window <= 0 || d.window % 2 != 0) throw ConfigError("dynamics.window must be even and positive");
  if (d.bridge_window <= 0 || d.bridge_window % 2 != 0) {
    throw ConfigError("dynamics.bridge_window must be even and positive");
  }
  if (config.output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

Json config_to_json(const RunConfig& config) {
  Json j;
  j["alpha"] = to_json(config.alpha);
  j["seed"] = config.seed;
  j["ball_radius"] = config.ball_radius;
  j["samples"] = config.samples;
  j["bfs_budget"] = config.bfs_budget;
  j["explore_samples"] = config.explore_samples;
  Json d;
  d["K"] = config.dynamics.ks;
  d["window"] = config.dynamics.window;
  d["instances"] = config.dynamics.instances;
  d["transpositions"] = config.dynamics.transpositions;
  d["bridge_instances"] = config.dynamics.bridge_instances;
  d["bridge_window"] = config.dynamics.bridge_window;
  j["dynamics"] = std::move(d);
  return j;
}

AlgebraicPoint parse_point(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return AlgebraicPoint::rational(parse_rational(text));
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

Side parse_side(std::string_view text) {
  text = trim(text);
  if (text == "I" || text == "i") return Side::I;
  if (text == "J" || text == "j") return Side::J;
  throw ConfigError("side must be I or J, got '" + std::string(text) + "'");
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

int cmd_explore(const RunConfig& config, const GVertex& start) {
  return guarded("explore", [&] {
    validate_config(config);
    const SchreierGraph graph(AlphaContext::make(config.alpha));
    Json out = header(config, "explore");
    Json findings = Json::array();

    out["start"] = to_json(start);
    const std::vector<GEdge> edges = graph.neighbors(start);
    out["start_degree"] = edges.size();
    Json nb = Json::array();
    for (const GEdge& e : edges) nb.push_back(edge_json(e));
    out["neighbors"] = std::move(nb);

    std::size_t finished = 0;
    auto explore = [&](const GVertex& v) -> Json {
      try {
        const ComponentView view = graph.explore_component(v, config.bfs_budget);
        if (view.kind != ComponentKind::Partial) ++finished;
        return to_json(view);
      } catch (const Finding& f) {
        findings.push_back(f.to_json());
        return f.to_json();
      }
    };
    out["component"] = explore(start);

    Json specials = Json::array();
    for (const GVertex& v : graph.degree_one_vertices()) specials.push_back(explore(v));
    out["degree_one_components"] = std::move(specials);

    try {
      const SampleReport survey = classify_sample(graph, config.explore_samples, config.bfs_budget, config.seed);
      finished += survey.components.size();
      out["survey"] = to_json(survey);
    } catch (const Finding& f) {
      findings.push_back(f.to_json());
    }

    Json parity;
    parity["finished_components"] = finished;
    parity["statement"] = finished == 0
                              ? "no component was fully explored within the budget; parity check is vacuous"
                              : "every fully explored component is an even cycle or a path with an odd edge count";
    if (!findings.empty()) parity["statement"] = "a fully explored component violates the parity rule";
    out["parity"] = std::move(parity);
    out["findings"] = findings;

    write_atomic(prepare_output(config, kExploreFile), dump_json(out));
    std::cerr << "explore: " << to_string(start.side) << ' ' << start.point.to_string() << " degree "
              << edges.size() << ", " << finished << " finished components, " << findings.size() << " findings\n";
    return findings.empty() ? kExitOk : kExitFinding;
  });
}

int cmd_verify_lemma(const RunConfig& config) {
  return guarded("verify-lemma", [&] {
    validate_config(config);
    const SchreierGraph graph(AlphaContext::make(config.alpha));
    const LemmaReport report =
        verify_lemma(graph, config.ball_radius, config.samples, config.seed, config.bfs_budget, config.threads);
    Json out = header(config, "verify-lemma");
    out.update(to_json(report));
    out["passed"] = report.clean();
    write_atomic(prepare_output(config, kLemmaFile), dump_json(out));
    std::cerr << "verify-lemma: ball " << report.ball_size << ", " << report.checks << " checks, "
              << report.violations.size() << " violations\n";
    return report.clean() ? kExitOk : kExitFinding;
  });
}

int cmd_dynamics(const RunConfig& config) {
  return guarded("dynamics", [&] {
    validate_config(config);
    const DynamicsConfig& d = config.dynamics;
    Json out = header(config, "dynamics");
    Json findings = Json::array();
    std::ostringstream csv;
    csv << "suite,instance,seed,K,window,n,S_size,cost,rewired_pairs\n";

    auto record = [&](const char* suite, std::size_t index, std::uint64_t seed, int k, Coord window,
                      const RunAudit& audit) {
      for (const TraceRecord& r : audit.trace) {
        csv << suite << ',' << index << ',' << seed << ',' << k << ',' << window << ',' << r.n << ',' << r.s_size
            << ',' << r.cost << ',' << r.rewired_pairs << '\n';
      }
    };

    Json instances = Json::array();
    std::size_t passed = 0;
    for (std::size_t i = 0; i < d.instances; ++i) {
      const int k = d.ks[i % d.ks.size()];
      const std::uint64_t seed = derive_seed(config.seed, i);
      Json entry;
      entry["index"] = i;
      entry["seed"] = seed;
      entry["K"] = k;
      entry["window"] = d.window;
      try {
        const std::size_t transpositions = d.transpositions ? d.transpositions : static_cast<std::size_t>(d.window);
        const KMatching m0 = random_kmatching(d.window, k, seed, transpositions);
        const RunAudit audit = audit_dynamics(m0);
        record("random", i, seed, k, d.window, audit);
        entry.update(audit_json(audit));
        if (audit.problems.empty()) ++passed;
      } catch (const Finding& f) {
        entry["finding"] = f.to_json();
        findings.push_back(f.to_json());
      }
      instances.push_back(std::move(entry));
    }
    Json random_suite;
    random_suite["instances"] = d.instances;
    random_suite["passed"] = passed;
    random_suite["runs"] = std::move(instances);
    out["random_suite"] = std::move(random_suite);

    // Bridge: matchings written as piece assignments by group elements along
    // one component of G, re-read with K = 2 max|b| + 1.
    Json bridge = Json::object();
    std::size_t bridge_passed = 0;
    if (d.bridge_instances > 0) {
      const SchreierGraph graph(AlphaContext::make(config.alpha));
      Rng rng(derive_seed(config.seed, 0xb41d6eULL));
      Rational anchor = random_unit_rational(rng);
      while (anchor == 0 || anchor == 1) anchor = random_unit_rational(rng);
      const int max_k = *std::max_element(d.ks.begin(), d.ks.end());
      const Coord radius = d.bridge_window + max_k + 1;
      const ComponentChart chart = ComponentChart::build(graph, AlgebraicPoint::rational(anchor), radius);
      bridge["anchor"] = to_json(AlgebraicPoint::rational(anchor));
      bridge["chart_radius"] = radius;
      Json runs = Json::array();
      for (std::size_t j = 0; j < d.bridge_instances; ++j) {
        const int k = d.ks[j % d.ks.size()];
        const std::uint64_t seed = derive_seed(config.seed, 1'000'000 + j);
        Json entry;
        entry["index"] = j;
        entry["seed"] = seed;
        entry["K"] = k;
        entry["window"] = d.bridge_window;
        try {
          const KMatching source = random_kmatching(d.bridge_window, k, seed,
                                                    static_cast<std::size_t>(d.bridge_window));
          const std::vector<AssignmentPiece> pieces = assignment_for(chart, source);
          std::int64_t max_b = 0;
          for (const AssignmentPiece& p : pieces) max_b = std::max<std::int64_t>(max_b, std::abs(p.element.b));
          entry["pieces"] = pieces.size();
          entry["max_abs_b"] = max_b;
          entry["bridge_K"] = bridge_k_bound(static_cast<int>(max_b));
          KMatching induced = KMatching::standard(1, 0);
          try {
            induced = kmatching_from_assignment(chart, pieces);
          } catch (const DynamicsError& e) {
            Json witness = entry;
            witness["error"] = e.what();
            throw Finding(FindingKind::LemmaViolation, "piece assignment does not fit in G^(2L+1)", witness);
          }
          const bool same = induced.paths() == source.paths();
          entry["reproduces_source"] = same;
          const RunAudit audit = audit_dynamics(induced);
          record("bridge", j, seed, induced.k(), d.bridge_window, audit);
          entry.update(audit_json(audit));
          if (same && audit.problems.empty()) ++bridge_passed;
        } catch (const Finding& f) {
          entry["finding"] = f.to_json();
          findings.push_back(f.to_json());
        }
        runs.push_back(std::move(entry));
      }
      bridge["runs"] = std::move(runs);
    }
    bridge["instances"] = d.bridge_instances;
    bridge["passed"] = bridge_passed;
    out["bridge_suite"] = std::move(bridge);
    out["findings"] = findings;
    const bool ok = findings.empty() && passed == d.instances && bridge_passed == d.bridge_instances;
    out["passed"] = ok;

    write_atomic(prepare_output(config, kTraceFile), csv.str());
    write_atomic(prepare_output(config, kDynamicsFile), dump_json(out));
    std::cerr << "dynamics: " << passed << '/' << d.instances << " random, " << bridge_passed << '/'
              << d.bridge_instances << " bridge instances passed\n";
    return ok ? kExitOk : kExitFinding;
  });
}

int cmd_figure(const RunConfig& config) {
  return guarded("figure", [&] {
    validate_config(config);
    const AlphaContext ctx = AlphaContext::make(config.alpha);
    const EdgePolygon polygon = edge_polygon(ctx);
    Json out = header(config, "figure");
    Json corners = Json::array();
    for (const PlanePoint& c : polygon.corners()) {
      Json corner;
      corner["x"] = to_json(c.x);
      corner["y"] = to_json(c.y);
      corner["label"] = corner_label(c);
      corners.push_back(std::move(corner));
    }
    out["corners"] = std::move(corners);
    Json segments = Json::array();
    for (const EdgeSegment& s : polygon.segments) {
      Json seg;
      seg["generator"] = to_string(s.generator);
      seg["from"] = Json::array({to_json(s.from.x), to_json(s.from.y)});
      seg["to"] = Json::array({to_json(s.to.x), to_json(s.to.y)});
      seg["slope"] = s.slope;
      segments.push_back(std::move(seg));
    }
    out["segments"] = std::move(segments);
    out["closed"] = polygon.outline.front() == polygon.outline.back();
    write_atomic(prepare_output(config, kFigureSvg), render_svg(ctx, polygon));
    write_atomic(prepare_output(config, kFigureFile), dump_json(out));
    std::cerr << "figure: " << polygon.corners().size() << " corners written to "
              << (config.output_dir / kFigureSvg).string() << '\n';
    return kExitOk;
  });
}

int cmd_report(const RunConfig& config) {
  return guarded("report", [&] {
    validate_config(config);
    Json out = header(config, "report");
    Json sections;
    sections["explore"] = read_json_file(config.output_dir / kExploreFile);
    sections["verify_lemma"] = read_json_file(config.output_dir / kLemmaFile);
    sections["dynamics"] = read_json_file(config.output_dir / kDynamicsFile);
    sections["figure"] = read_json_file(config.output_dir / kFigureFile);
    const bool clean = sections["explore"].value("findings", Json::array()).empty() &&
                       sections["verify_lemma"].value("passed", false) && sections["dynamics"].value("passed", false);
    out["all_checks_passed"] = clean;
    out["sections"] = std::move(sections);
    write_atomic(prepare_output(config, kReportFile), dump_json(out));
    std::cerr << "report: written to " << (config.output_dir / kReportFile).string() << '\n';
    return clean ? kExitOk : kExitFinding;
  });
}

}  // namespace equidecomp
