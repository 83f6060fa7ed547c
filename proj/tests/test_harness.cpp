#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "imann/harness.hpp"

using namespace imann;

namespace {

ExperimentConfig small_config(const std::string& formulation, const std::string& method) {
  ExperimentConfig config;
  config.formulation_id = formulation;
  config.method = method;
  config.restarts = 3;
  config.base_seed = 42;
  config.quad_points = 16;
  config.threads = 2;
  config.cma.max_evaluations = 600;
  config.train.max_epochs = 120;
  return config;
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "imann_harness_test";
  std::filesystem::create_directories(dir);
  return dir;
}

// Identical up to wall time, which a re-run cannot reproduce.
bool same_except_wall_time(const RunRecord& a, const RunRecord& b) {
  RunRecord lhs = a;
  RunRecord rhs = b;
  lhs.wall_time_ms = 0;
  rhs.wall_time_ms = 0;
  return lhs == rhs;
}

}  // namespace

TEST_CASE("grid sampling on an interval") {
  const Domain omega({{-4.0, 4.0}});
  const auto grid = sample_grid(omega, 5);
  REQUIRE(grid.size() == 5);
  const double expected[5] = {-4.0, -2.0, 0.0, 2.0, 4.0};
  for (int i = 0; i < 5; ++i) {
    CHECK(grid[static_cast<std::size_t>(i)][0] == expected[i]);
  }

  const auto endpoints = sample_grid(Domain({{-1.0, 1.0}}), 2);
  CHECK(endpoints[0][0] == -1.0);
  CHECK(endpoints[1][0] == 1.0);

  const auto midpoint = sample_grid(omega, 1);
  CHECK(midpoint.size() == 1);
  CHECK(midpoint[0][0] == 0.0);

  CHECK_THROWS_AS(sample_grid(omega, 0), std::invalid_argument);
}

TEST_CASE("2-D grids are row-major Cartesian products") {
  const ModelFormulation& f9 = find_formulation("f9");
  const auto grid = sample_grid(f9.domain(), 4);
  REQUIRE(grid.size() == 16);
  // Last dimension varies fastest.
  CHECK(grid[0][0] == -1.4);
  CHECK(grid[0][1] == -0.25);
  CHECK(grid[1][0] == -1.4);
  CHECK(grid[1][1] > grid[0][1]);
  CHECK(grid[4][0] > grid[3][0]);
  CHECK(grid[15][0] == 1.6);
  CHECK(grid[15][1] == 3.75);
}

TEST_CASE("datasets label grid points with the target") {
  const ModelFormulation& f1 = find_formulation("f1");
  const Dataset data = build_dataset(f1, 5);
  REQUIRE(data.size() == 5);
  for (const DataPoint& p : data.points()) {
    CHECK(p.y == poly_target(p.x[0]));
  }

  const ModelFormulation& f9 = find_formulation("f9");
  CHECK(build_dataset(f9, 16).size() == 16);
  CHECK_THROWS_AS(build_dataset(f9, 15), std::invalid_argument);
}

TEST_CASE("default sizes and architectures") {
  CHECK(default_sizes(1) == std::vector<int>{3, 5, 9, 17, 33, 65});
  CHECK(default_sizes(2) == std::vector<int>{4, 16, 64, 256});
  CHECK(default_architecture("imann", find_formulation("f1")) == "1-5-5-1");
  CHECK(default_architecture("imann", find_formulation("f9")) == "2-5-5-2");
  CHECK(default_architecture("dnn", find_formulation("f2")) == "1-32-16-16-1");
  CHECK(default_architecture("dnn", find_formulation("f9")) == "2-32-32-16-1");
}

TEST_CASE("attempts are reproducible per seed and index") {
  const ExperimentConfig config = small_config("f1", "imann");
  const Dataset data = build_dataset(find_formulation("f1"), 5);
  const RunRecord a = run_attempt(config, data, 0, 1);
  const RunRecord b = run_attempt(config, data, 0, 1);
  CHECK(same_except_wall_time(a, b));
  CHECK(a.seed == (config.base_seed ^ 1u));
  CHECK(a.status == "ok");
  CHECK(a.error_integral >= 0.0);

  const RunRecord c = run_attempt(config, data, 2, 1);
  CHECK(c.seed == (config.base_seed ^ 2001u));
}

TEST_CASE("dnn attempt runs on a single point") {
  ExperimentConfig config = small_config("f1", "dnn");
  const Dataset data = build_dataset(find_formulation("f1"), 1);
  const RunRecord record = run_attempt(config, data, 0, 0);
  CHECK(record.status == "ok");
  CHECK(std::isfinite(record.error_integral));
}

TEST_CASE("experiment accounting and selection") {
  ExperimentConfig config = small_config("f9", "imann");
  config.sizes = {4, 16};
  config.cma.max_evaluations = 300;
  const ExperimentResult result = run_experiment(config);
  CHECK(result.attempts.size() == 6);  // 2 sizes x 3 restarts
  CHECK(result.best_per_size.size() == 2);

  for (const RunRecord& best : result.best_per_size) {
    for (const RunRecord& attempt : result.attempts) {
      if (attempt.dataset_size == best.dataset_size) {
        CHECK(best.error_integral <= attempt.error_integral);
      }
    }
  }

  // Attempts arrive sorted by (size, restart).
  for (std::size_t i = 1; i < result.attempts.size(); ++i) {
    const RunRecord& prev = result.attempts[i - 1];
    const RunRecord& cur = result.attempts[i];
    const bool ordered = prev.dataset_size < cur.dataset_size ||
                         (prev.dataset_size == cur.dataset_size &&
                          prev.restart_index < cur.restart_index);
    CHECK(ordered);
  }
}

TEST_CASE("single restart selects the only attempt") {
  ExperimentConfig config = small_config("f2", "imann");
  config.restarts = 1;
  config.sizes = {3};
  config.cma.max_evaluations = 200;
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.attempts.size() == 1);
  CHECK(same_except_wall_time(result.attempts.front(), result.best_per_size.front()));
}

TEST_CASE("sweeps are deterministic apart from wall time") {
  ExperimentConfig config = small_config("f1", "imann");
  config.sizes = {3, 5};
  config.cma.max_evaluations = 400;
  const ExperimentResult first = run_experiment(config);
  const ExperimentResult second = run_experiment(config);
  REQUIRE(first.attempts.size() == second.attempts.size());
  for (std::size_t i = 0; i < first.attempts.size(); ++i) {
    CHECK(same_except_wall_time(first.attempts[i], second.attempts[i]));
  }
}

TEST_CASE("csv round trip preserves records") {
  ExperimentConfig config = small_config("f1", "dnn");
  config.sizes = {3};
  config.train.max_epochs = 60;
  const ExperimentResult result = run_experiment(config);

  const auto path = temp_dir() / "attempts.csv";
  emit_csv(result.attempts, path);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "formulation,method,arch,dataset_size,restart_index,seed,fitness,"
        "error_integral,evals,wall_time_ms,status");

  const std::vector<RunRecord> parsed = parse_csv(path);
  REQUIRE(parsed.size() == result.attempts.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i] == result.attempts[i]);
  }
}

TEST_CASE("plot data holds one row per size") {
  ExperimentConfig config = small_config("f9", "imann");
  config.sizes = {4, 16};
  config.cma.max_evaluations = 200;
  const ExperimentResult result = run_experiment(config);

  const auto dir = temp_dir();
  emit_plot_data(result.best_per_size, dir);
  std::ifstream in(dir / "plot_f9_imann.dat");
  REQUIRE(in.good());
  int rows = 0;
  int size = 0;
  double r_value = 0.0;
  while (in >> size >> r_value) {
    ++rows;
    CHECK(r_value >= 0.0);
  }
  CHECK(rows == 2);
}
