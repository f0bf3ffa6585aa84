// Benchmark harness: identical generated instances through both solvers,
// aggregated into per-scenario solved counts and mean grounded-check counts
// (N_S over solved trials, N_U over unsolved ones).

#ifndef CDITO_BENCH_HPP
#define CDITO_BENCH_HPP

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdito/instance.hpp"
#include "cdito/log.hpp"
#include "cdito/run.hpp"

namespace cdito {

struct BenchParams {
  std::vector<int> flows_list{10};
  int trials = 100;
  double timeout_s = 20.0;
  std::uint64_t seed = 1;
};

struct TrialOutcome {
  SolveStatus status = SolveStatus::Unsat;
  std::uint64_t h_calls = 0;
  std::uint64_t iterations = 0;
  double wall_ms = 0.0;
};

struct TrialRecord {
  int flows = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  TrialOutcome cdito;
  TrialOutcome ito;
  std::string error;  // non-empty when the trial failed outright
};

struct SolverAggregate {
  int solved = 0;
  int unsolved = 0;
  double n_s = 0.0;  // mean h calls over solved trials
  double n_u = 0.0;  // mean h calls over unsolved trials
};

struct ScenarioRow {
  int flows = 0;
  int trials = 0;
  SolverAggregate cdito;
  SolverAggregate ito;
};

struct BenchReport {
  BenchParams params;
  std::vector<ScenarioRow> rows;
  std::vector<TrialRecord> trials;
};

namespace detail {

inline TrialOutcome to_outcome(const RunOutcome& run) {
  return {run.result.status, run.result.stats.h_calls, run.result.stats.iterations,
          run.result.stats.wall_ms};
}

inline SolverAggregate aggregate(const std::vector<TrialRecord>& trials, int flows,
                                 bool use_cdito) {
  SolverAggregate agg;
  double sum_s = 0, sum_u = 0;
  for (const TrialRecord& t : trials) {
    if (t.flows != flows) continue;
    const TrialOutcome& o = use_cdito ? t.cdito : t.ito;
    if (o.status == SolveStatus::Solved) {
      ++agg.solved;
      sum_s += double(o.h_calls);
    } else {
      ++agg.unsolved;
      sum_u += double(o.h_calls);
    }
  }
  if (agg.solved) agg.n_s = sum_s / agg.solved;
  if (agg.unsolved) agg.n_u = sum_u / agg.unsolved;
  return agg;
}

}  // namespace detail

inline std::uint64_t trial_seed(const BenchParams& params, int flows, int trial) {
  return params.seed + 1000003ULL * std::uint64_t(flows) + std::uint64_t(trial);
}

// Sequential sweep; a trial that throws is recorded and skipped, never fatal.
inline BenchReport run_bench(const BenchParams& params) {
  if (params.trials < 1) throw UsageError("bench: trials must be >= 1");
  BenchReport report;
  report.params = params;
  for (int flows : params.flows_list) {
    for (int trial = 0; trial < params.trials; ++trial) {
      TrialRecord rec;
      rec.flows = flows;
      rec.trial = trial;
      rec.seed = trial_seed(params, flows, trial);
      try {
        Instance inst = generate(rec.seed, flows);
        rec.cdito = detail::to_outcome(run_solver(inst, SolverKind::Cdito, params.timeout_s));
        rec.ito = detail::to_outcome(run_solver(inst, SolverKind::Ito, params.timeout_s));
      } catch (const std::exception& e) {
        rec.error = e.what();
        log::error("trial " + std::to_string(trial) + " (" + std::to_string(flows) +
                   " flows) failed: " + rec.error);
      }
      report.trials.push_back(std::move(rec));
      log::info("flows=" + std::to_string(flows) + " trial=" + std::to_string(trial) +
                " cdito=" + to_string(report.trials.back().cdito.status) +
                " ito=" + to_string(report.trials.back().ito.status));
    }
    ScenarioRow row;
    row.flows = flows;
    row.trials = params.trials;
    row.cdito = detail::aggregate(report.trials, flows, true);
    row.ito = detail::aggregate(report.trials, flows, false);
    report.rows.push_back(row);
  }
  return report;
}

inline std::string format_table(const BenchReport& report) {
  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "%7s %7s | %-24s | %-24s\n", "", "",
                "cdito", "ito");
  out += line;
  std::snprintf(line, sizeof line, "%7s %7s | %7s %7s %8s | %7s %7s %8s\n", "#flows",
                "trials", "solved", "N_S", "N_U", "solved", "N_S'", "N_U'");
  out += line;
  auto mean = [](int count, double value) {
    if (!count) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", value);
    return std::string(buf);
  };
  for (const ScenarioRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%7d %7d | %7d %7s %8s | %7d %7s %8s\n", r.flows,
                  r.trials, r.cdito.solved, mean(r.cdito.solved, r.cdito.n_s).c_str(),
                  mean(r.cdito.unsolved, r.cdito.n_u).c_str(), r.ito.solved,
                  mean(r.ito.solved, r.ito.n_s).c_str(),
                  mean(r.ito.unsolved, r.ito.n_u).c_str());
    out += line;
  }
  return out;
}

inline nlohmann::json report_to_json(const BenchReport& report, bool include_wall = true) {
  nlohmann::json j;
  j["params"] = {{"flows", report.params.flows_list},
                 {"trials", report.params.trials},
                 {"timeout_s", report.params.timeout_s},
                 {"seed", report.params.seed}};
  j["rows"] = nlohmann::json::array();
  for (const ScenarioRow& r : report.rows) {
    auto agg = [](const SolverAggregate& a) {
      return nlohmann::json{{"solved", a.solved},
                            {"unsolved", a.unsolved},
                            {"n_s", a.solved ? nlohmann::json(a.n_s) : nlohmann::json()},
                            {"n_u", a.unsolved ? nlohmann::json(a.n_u) : nlohmann::json()}};
    };
    j["rows"].push_back({{"flows", r.flows},
                         {"trials", r.trials},
                         {"cdito", agg(r.cdito)},
                         {"ito", agg(r.ito)}});
  }
  j["trials"] = nlohmann::json::array();
  for (const TrialRecord& t : report.trials) {
    auto one = [&](const TrialOutcome& o) {
      nlohmann::json jo{{"status", to_string(o.status)},
                        {"h_calls", o.h_calls},
                        {"iterations", o.iterations}};
      if (include_wall) jo["wall_ms"] = o.wall_ms;
      return jo;
    };
    nlohmann::json jt{{"flows", t.flows},
                      {"trial", t.trial},
                      {"seed", t.seed},
                      {"cdito", one(t.cdito)},
                      {"ito", one(t.ito)}};
    if (!t.error.empty()) jt["error"] = t.error;
    j["trials"].push_back(jt);
  }
  return j;
}

}  // namespace cdito

#endif  // CDITO_BENCH_HPP
