// Command-line front end: instance generation, single solves, and the
// two-solver benchmark sweep. Results go to stdout, logs to stderr
// (verbosity via CDITO_LOG).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdito/bench.hpp"
#include "cdito/instance.hpp"
#include "cdito/log.hpp"
#include "cdito/run.hpp"

namespace {

void print_human(const cdito::RunOutcome& out) {
  const auto& r = out.result;
  std::printf("status: %s\n", cdito::to_string(r.status));
  if (r.order) {
    std::printf("order:");
    for (int e : r.order->sequence()) std::printf(" %d", e);
    std::printf("\n");
  }
  if (!out.reason.empty()) std::printf("reason: %s\n", out.reason.c_str());
  std::printf("h_calls: %llu\niterations: %llu\npruned_branches: %llu\nwall_ms: %.1f\n",
              (unsigned long long)r.stats.h_calls, (unsigned long long)r.stats.iterations,
              (unsigned long long)r.stats.nodes_pruned_estimate, r.stats.wall_ms);
  if (out.plan) {
    for (const auto& [flow, nodes] : out.plan->paths) {
      std::printf("route flow %d:", flow);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        std::printf("%s%d", i ? " -> " : " ", nodes[i]);
      std::printf("\n");
    }
  }
  if (!out.schedule_ms.empty()) {
    std::printf("schedule_ms:");
    for (std::size_t e = 1; e < out.schedule_ms.size(); ++e)
      std::printf(" %zu@%lld", e, (long long)out.schedule_ms[e]);
    std::printf("\n");
  }
  std::printf("learned_clauses: %zu\n", r.learned.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conflict-directed total ordering over network flow missions"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  int gen_flows = 10;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--flows", gen_flows, "number of flows")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--output", gen_out, "output path")->required();

  auto* solve_cmd = app.add_subcommand("solve", "solve one instance file");
  std::string solve_path, solver_name = "cdito";
  double solve_timeout = 20.0;
  bool solve_json = false;
  solve_cmd->add_option("--instance", solve_path, "instance file")->required();
  solve_cmd->add_option("--solver", solver_name, "cdito | ito")
      ->check(CLI::IsMember({"cdito", "ito"}));
  solve_cmd->add_option("--timeout", solve_timeout, "seconds, 0 = unlimited");
  solve_cmd->add_flag("--json", solve_json, "print the result as JSON");

  auto* bench = app.add_subcommand("bench", "run both solvers over generated instances");
  cdito::BenchParams params;
  std::string bench_out;
  bench->add_option("--flows", params.flows_list, "flow counts, comma separated")
      ->delimiter(',');
  bench->add_option("--trials", params.trials, "trials per flow count");
  bench->add_option("--timeout", params.timeout_s, "per-solve timeout in seconds");
  bench->add_option("--seed", params.seed, "base seed");
  bench->add_option("-o,--output", bench_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 3;
  }

  try {
    if (gen->parsed()) {
      cdito::Instance inst = cdito::generate(gen_seed, gen_flows);
      cdito::save_instance(inst, gen_out);
      std::printf("wrote %s (%d flows, %d events, %zu links, seed %llu)\n", gen_out.c_str(),
                  gen_flows, inst.num_events(), inst.net.links.size(),
                  (unsigned long long)gen_seed);
      return 0;
    }
    if (solve_cmd->parsed()) {
      cdito::Instance inst = cdito::load_instance(solve_path);
      auto kind = cdito::parse_solver(solver_name);
      cdito::RunOutcome out = cdito::run_solver(inst, *kind, solve_timeout);
      if (solve_json)
        std::printf("%s\n", cdito::outcome_to_json(out).dump(2).c_str());
      else
        print_human(out);
      return cdito::exit_code(out);
    }
    if (bench->parsed()) {
      cdito::BenchReport report = cdito::run_bench(params);
      std::printf("%s", cdito::format_table(report).c_str());
      if (!bench_out.empty()) {
        std::ofstream f(bench_out);
        if (!f) throw cdito::ParseError("cannot write " + bench_out);
        f << cdito::report_to_json(report).dump(2) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    cdito::log::error(e.what());
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 3;
}
