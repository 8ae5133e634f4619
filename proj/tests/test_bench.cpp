#include <doctest.h>

#include <cmath>

#include "ntwfsm/bench.hpp"
#include "ntwfsm/oracles.hpp"

using namespace ntwfsm;

TEST_CASE("formula columns") {
  CHECK(quadratic_ratio(1) == 1.0);
  CHECK(quadratic_ratio(8) == 64.0);
  CHECK(worst_case_ratio(1, 7, 6) == doctest::Approx(1.0));
  CHECK(std::lround(worst_case_ratio(8, 7, 6)) == 135);
  for (int r = 1; r <= 8; ++r) CHECK(worst_case_ratio(r, 7, 6) >= quadratic_ratio(r));
  CHECK(worst_case_ratio(3, 1, 1) == 9.0);
}

TEST_CASE("run_bench") {
  BenchConfig cfg;
  cfg.rmax = 2;
  cfg.trials = 1;
  cfg.min_trial_time = std::chrono::milliseconds(1);
  cfg.compare_heaps = true;
  const auto report = run_bench(cfg);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].column_b == 1.0);
  CHECK(report.rows[0].weight == 5);
  CHECK(report.rows[1].weight == edit_distance_matrix(U"gemachtgemacht", U"machenmachen").distance);
  CHECK(report.rows[1].length_a == 14);
  CHECK(report.rows[1].column_a == 4.0);
  CHECK(report.rows[1].column_d.has_value());

  const auto csv = format_bench_csv(report);
  CHECK(csv.rfind("r,len_a,len_b,time_ms,weight,A,B,C,D\n", 0) == 0);
  CHECK(!format_bench_text(report).empty());

  cfg.rmax = 0;
  CHECK_THROWS_AS(run_bench(cfg), Error);
}
