#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "equidecomp/cli.hpp"
#include "support.hpp"

using namespace equidecomp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("equidecomp_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Small enough to keep every command well under a second.
RunConfig small_config(const fs::path& out) {
  RunConfig config = parse_config(R"(
    # quick settings
    seed = 5
    ball_radius = 3
    samples = 12
    bfs_budget = 500
    explore.samples = 4
    dynamics.K = 3, 5
    dynamics.window = 24
    dynamics.instances = 6
    dynamics.bridge_instances = 2
    dynamics.bridge_window = 12
  )");
  config.output_dir = out;
  return config;
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
  const RunConfig config = parse_config("alpha = -1,1,3,2\nseed=17 # trailing\n\ndynamics.K = 7\nthreads = 2\n");
  EXPECT_EQ(config.alpha.d, 3);
  EXPECT_EQ(config.alpha.r, 2);
  EXPECT_EQ(config.seed, 17u);
  EXPECT_EQ(config.dynamics.ks, std::vector<int>{7});
  EXPECT_EQ(config.threads, 2u);
  EXPECT_EQ(config.ball_radius, 8);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("bogus = 1"), ConfigError);
  EXPECT_THROW(parse_config("seed"), ConfigError);
  EXPECT_THROW(parse_config("seed = x"), ConfigError);
  EXPECT_THROW(parse_config("ball_radius = 11"), ConfigError);
  EXPECT_THROW(parse_config("dynamics.K = 4"), ConfigError);
  EXPECT_THROW(parse_config("dynamics.window = 201"), ConfigError);
  EXPECT_THROW(parse_config("alpha = 1,1,4,3"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.txt"), ConfigError);
}

TEST(Config, JsonOmitsThreadsAndOutput) {
  RunConfig a;
  RunConfig b;
  b.threads = 7;
  b.output_dir = "elsewhere";
  EXPECT_EQ(config_to_json(a), config_to_json(b));
  EXPECT_FALSE(config_to_json(a).contains("threads"));
}

TEST(Parse, PointsAndSides) {
  EXPECT_EQ(parse_point("1/2"), AlgebraicPoint::rational(testing_support::rational(1, 2)));
  EXPECT_EQ(parse_point("0,1"), AlgebraicPoint::alpha());
  EXPECT_EQ(parse_side("J"), Side::J);
  EXPECT_THROW(parse_side("K"), Error);
  EXPECT_THROW(parse_point("1/0"), Error);
}

TEST(Commands, ExitCodes) {
  const fs::path out = scratch("exit");
  RunConfig config = small_config(out);
  EXPECT_EQ(cmd_report(config), kExitUsage);  // nothing to merge yet
  EXPECT_EQ(cmd_figure(config), kExitOk);
  EXPECT_EQ(cmd_verify_lemma(config), kExitOk);
  EXPECT_EQ(cmd_dynamics(config), kExitOk);
  EXPECT_EQ(cmd_explore(config, {Side::I, parse_point("1/3")}), kExitOk);
  EXPECT_EQ(cmd_explore(config, {Side::I, parse_point("3")}), kExitUsage);
  EXPECT_EQ(cmd_report(config), kExitOk);
  for (const char* name : {"explore.json", "lemma.json", "dynamics.json", "dynamics_trace.csv", "figure.svg",
                           "figure.json", "report.json"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  EXPECT_EQ(slurp(out / "dynamics_trace.csv").substr(0, 52),
            "suite,instance,seed,K,window,n,S_size,cost,rewired_p");

  config.dynamics.instances = 0;
  config.dynamics.bridge_instances = 0;
  EXPECT_EQ(cmd_dynamics(config), kExitOk);
  fs::remove_all(out);
}

TEST(Commands, FindingExitsThree) {
  const fs::path out = scratch("finding");
  RunConfig config = small_config(out);
  config.alpha = AlphaSpec{-1, 1, 5, 2};  // alpha > 1/2: intermediate points escape [0, 1]
  EXPECT_EQ(cmd_verify_lemma(config), kExitFinding);
  fs::remove_all(out);
}

TEST(Commands, ByteIdenticalReruns) {
  const fs::path first = scratch("det_a");
  const fs::path second = scratch("det_b");
  for (const fs::path& out : {first, second}) {
    RunConfig config = small_config(out);
    config.threads = out == first ? 1 : 3;
    ASSERT_EQ(cmd_explore(config, {Side::I, parse_point("2/5")}), kExitOk);
    ASSERT_EQ(cmd_verify_lemma(config), kExitOk);
    ASSERT_EQ(cmd_dynamics(config), kExitOk);
    ASSERT_EQ(cmd_figure(config), kExitOk);
    ASSERT_EQ(cmd_report(config), kExitOk);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(first)) {
    const fs::path name = entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(second / name)) << name;
    ++compared;
  }
  EXPECT_EQ(compared, 7u);
  fs::remove_all(first);
  fs::remove_all(second);
}
