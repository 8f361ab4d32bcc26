#pragma once

// Batch commands behind the `equidecomp` tool. Each command writes its
// outputs into the configured directory and returns a process exit status:
// 0 when every check passes, 2 for usage or configuration errors, 3 when a
// computed result contradicts the mathematics (a Finding).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "equidecomp/algebra.hpp"
#include "equidecomp/errors.hpp"
#include "equidecomp/graph.hpp"
#include "equidecomp/serialize.hpp"

namespace equidecomp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFinding = 3;

std::string_view tool_version();

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct DynamicsConfig {
  std::vector<int> ks{3, 5, 7, 9};
  std::int64_t window = 200;
  std::size_t instances = 500;
  std::size_t transpositions = 0;  // 0: one attempt per window coordinate
  std::size_t bridge_instances = 20;
  std::int64_t bridge_window = 40;
};

/// Keys, in the text format `key = value` (one per line, '#' comments):
///   alpha, seed, ball_radius, samples, bfs_budget, explore.samples,
///   dynamics.K, dynamics.window, dynamics.instances, dynamics.transpositions,
///   dynamics.bridge_instances, dynamics.bridge_window, output_dir, threads
struct RunConfig {
  AlphaSpec alpha;
  std::uint64_t seed = 0;
  int ball_radius = 8;
  std::size_t samples = 200;
  std::size_t bfs_budget = 10'000;
  std::size_t explore_samples = 20;
  DynamicsConfig dynamics;
  std::filesystem::path output_dir = "out";
  unsigned threads = 0;  // 0: hardware concurrency; never affects output
};

inline constexpr int kMaxBallRadius = 10;

/// Throws ConfigError on unknown keys, malformed values, or failed validation.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
void validate_config(const RunConfig& config);
/// Everything that influences results; `threads` is deliberately absent.
Json config_to_json(const RunConfig& config);

/// "u" or "u,v" (rationals) for the point u + v*alpha.
AlgebraicPoint parse_point(std::string_view text);
Side parse_side(std::string_view text);

/// Writes `contents` to `path` via a temporary file and rename.
void write_atomic(const std::filesystem::path& path, std::string_view contents);
std::string dump_json(const Json& j);

/// Runs `body`, mapping an escaping Error to kExitUsage and Finding to kExitFinding.
int run_command(std::string_view command, const std::function<int()>& body);

int cmd_explore(const RunConfig& config, const GVertex& start);
int cmd_verify_lemma(const RunConfig& config);
int cmd_dynamics(const RunConfig& config);
int cmd_figure(const RunConfig& config);
int cmd_report(const RunConfig& config);

}  // namespace equidecomp
