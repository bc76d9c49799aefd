#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "halfheat/config.hpp"
#include "halfheat/errors.hpp"
#include "halfheat/parallel.hpp"

using namespace halfheat;

TEST(Config, JsonRoundTrip) {
  RunConfig c;
  c.surface = "hyperbolic_helicoid";
  c.alpha = 0.14;
  c.points = {{0.1, 0.2}, {-0.3, 0.4}};
  c.r_grid = {0.1, 1.0 / 3.0};
  c.format = "json";
  c.seed = 99;
  EXPECT_EQ(RunConfig::from_json(c.to_json()), c);
  EXPECT_EQ(RunConfig::from_json(nlohmann::json::parse(c.to_json().dump())), c);
}

TEST(Config, MissingKeysKeepDefaults) {
  const RunConfig c = RunConfig::from_json({{"alpha", 1.0}});
  EXPECT_EQ(c.alpha, 1.0);
  EXPECT_EQ(c.surface, RunConfig{}.surface);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(RunConfig::from_json({{"colour", "red"}}), UsageError);
  EXPECT_THROW(RunConfig::from_json({{"alpha", "big"}}), UsageError);
  EXPECT_THROW(RunConfig::from_json(nlohmann::json::array()), UsageError);
  RunConfig c;
  c.density_tol = 0.0;
  EXPECT_THROW(c.validate(), UsageError);
  c = RunConfig{};
  c.r_grid.clear();
  EXPECT_THROW(c.validate(), UsageError);
  c = RunConfig{};
  c.format = "xml";
  EXPECT_THROW(c.validate(), UsageError);
  EXPECT_NO_THROW(RunConfig{}.validate());
  EXPECT_THROW(RunConfig::from_file("/nonexistent/config.json"), UsageError);
}

TEST(Config, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "halfheat_config_test.json";
  RunConfig c;
  c.t_grid = {0.25};
  std::ofstream(path) << c.to_json().dump(2);
  EXPECT_EQ(RunConfig::from_file(path.string()), c);
  std::filesystem::remove(path);
}

TEST(Config, HashIgnoresPlacement) {
  RunConfig a, b;
  b.threads = 7;
  b.output = "x.csv";
  EXPECT_EQ(a.hash(), b.hash());
  b.alpha = 0.5;
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
}

TEST(Config, SamplePoints) {
  RunConfig c;
  c.u_count = 3;
  c.v_count = 2;
  const auto pts = c.sample_points();
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts.front()[0], -1.0);
  EXPECT_EQ(pts.back()[1], 1.0);
  c.points = {{0.5, 0.5}};
  EXPECT_EQ(c.sample_points().size(), 1u);
}

TEST(Config, ThreadResolution) {
  EXPECT_EQ(resolve_threads(3), 3);
  setenv("HALFHEAT_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(0), 2);
  setenv("HALFHEAT_THREADS", "many", 1);
  EXPECT_THROW(resolve_threads(0), UsageError);
  unsetenv("HALFHEAT_THREADS");
  EXPECT_GE(resolve_threads(0), 1);
}

TEST(ParallelMap, OrderIndependentOfThreads) {
  const auto sq = [](std::size_t i) { return static_cast<double>(i * i); };
  EXPECT_EQ(parallel_map(100, 1, sq), parallel_map(100, 4, sq));
  EXPECT_EQ(parallel_map(100, 4, sq)[9], 81.0);
  EXPECT_TRUE(parallel_map(0, 4, sq).empty());
}

TEST(ParallelMap, RethrowsWorkerException) {
  const auto boom = [](std::size_t i) -> int {
    if (i == 17) throw std::runtime_error("boom");
    return 0;
  };
  EXPECT_THROW(parallel_map(50, 3, boom), std::runtime_error);
}
