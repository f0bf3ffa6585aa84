#include <catch2/catch_amalgamated.hpp>

#include "cdito/bench.hpp"
#include "support.hpp"

using namespace cdito;

TEST_CASE("single-trial aggregates equal the observation") {
  BenchParams p;
  p.flows_list = {2};
  p.trials = 1;
  p.timeout_s = 10.0;
  p.seed = 5;
  BenchReport report = run_bench(p);
  REQUIRE(report.rows.size() == 1);
  const ScenarioRow& row = report.rows[0];
  REQUIRE(report.trials.size() == 1);
  const TrialRecord& t = report.trials[0];
  REQUIRE(t.error.empty());
  if (t.cdito.status == SolveStatus::Solved) {
    REQUIRE(row.cdito.solved == 1);
    REQUIRE(row.cdito.n_s == double(t.cdito.h_calls));
  } else {
    REQUIRE(row.cdito.unsolved == 1);
    REQUIRE(row.cdito.n_u == double(t.cdito.h_calls));
  }
}

TEST_CASE("identical seeds give identical reports") {
  BenchParams p;
  p.flows_list = {2, 3};
  p.trials = 2;
  p.timeout_s = 10.0;
  p.seed = 11;
  auto a = report_to_json(run_bench(p), /*include_wall=*/false);
  auto b = report_to_json(run_bench(p), /*include_wall=*/false);
  REQUIRE(a == b);
}

TEST_CASE("both solvers see the same instance per trial") {
  BenchParams p;
  p.flows_list = {2};
  p.trials = 3;
  p.seed = 7;
  for (int trial = 0; trial < p.trials; ++trial) {
    std::uint64_t s = trial_seed(p, 2, trial);
    REQUIRE(serialize(generate(s, 2)) == serialize(generate(s, 2)));
  }
}

TEST_CASE("report table includes every scenario row") {
  BenchParams p;
  p.flows_list = {2};
  p.trials = 1;
  p.timeout_s = 10.0;
  BenchReport report = run_bench(p);
  std::string table = format_table(report);
  REQUIRE(table.find("#flows") != std::string::npos);
  REQUIRE(table.find("N_S") != std::string::npos);
  REQUIRE(table.find("\n      2 ") != std::string::npos);
}
