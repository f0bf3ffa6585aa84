// Wiring between instances and the two solvers, plus the result document the
// CLI prints.

#ifndef CDITO_RUN_HPP
#define CDITO_RUN_HPP

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdito/instance.hpp"
#include "cdito/netconfig.hpp"
#include "cdito/solver.hpp"
#include "cdito/stn.hpp"

namespace cdito {

enum class SolverKind { Cdito, Ito };

inline std::optional<SolverKind> parse_solver(const std::string& name) {
  if (name == "cdito") return SolverKind::Cdito;
  if (name == "ito") return SolverKind::Ito;
  return std::nullopt;
}

struct RunOutcome {
  SolveResult result;
  std::optional<netconfig::RoutingPlan> plan;
  std::vector<std::int64_t> schedule_ms;  // indexed by event, [0] unused
  std::string reason;                     // set when UNSAT was decided up front
};

inline Budget budget_from_timeout(double timeout_s) {
  Budget b;
  if (timeout_s > 0)
    b.time_limit = std::chrono::milliseconds(std::llround(timeout_s * 1000.0));
  return b;
}

inline RunOutcome run_solver(const Instance& inst, SolverKind kind, double timeout_s,
                             const netconfig::HOptions& opts = {}) {
  RunOutcome out;
  const int n = std::max(inst.num_events(), 1);
  const auto phi = inst.effective_clauses();
  const auto tn = inst.effective_temporal();

  ConsistencyFn h;
  try {
    h = netconfig::make_h(inst.net, inst.flows, tn, opts);
  } catch (const InstanceError& e) {
    // no ordering can repair this; report as no-solution with the cause
    out.result.status = SolveStatus::Unsat;
    out.reason = e.what();
    return out;
  }

  const Budget budget = budget_from_timeout(timeout_s);
  out.result = kind == SolverKind::Cdito ? solve(n, phi, h, budget)
                                         : ito_solve(n, phi, h, budget);
  if (out.result.status == SolveStatus::Solved) {
    const TotalOrder& order = *out.result.order;
    netconfig::CandidateTable table(inst.net, inst.flows, opts.route);
    auto route = netconfig::route_check(inst.net, order, inst.flows, table, opts.route);
    if (route.plan) out.plan = *route.plan;
    out.schedule_ms = stn::witness_schedule(tn, order);
  }
  return out;
}

inline int exit_code(const RunOutcome& out) {
  switch (out.result.status) {
    case SolveStatus::Solved: return 0;
    case SolveStatus::Unsat: return 1;
    case SolveStatus::Timeout: return 2;
  }
  return 3;
}

inline nlohmann::json outcome_to_json(const RunOutcome& out) {
  nlohmann::json j;
  j["status"] = to_string(out.result.status);
  if (out.result.order) {
    j["order"] = out.result.order->sequence();
  } else {
    j["order"] = nullptr;
  }
  if (out.plan) {
    nlohmann::json plan = nlohmann::json::object();
    for (const auto& [flow, nodes] : out.plan->paths) plan[std::to_string(flow)] = nodes;
    j["plan"] = plan;
  } else {
    j["plan"] = nullptr;
  }
  if (!out.schedule_ms.empty()) {
    nlohmann::json sched = nlohmann::json::array();
    for (std::size_t e = 1; e < out.schedule_ms.size(); ++e)
      sched.push_back({static_cast<int>(e), out.schedule_ms[e]});
    j["schedule_ms"] = sched;
  } else {
    j["schedule_ms"] = nullptr;
  }
  char trace[32];
  std::snprintf(trace, sizeof trace, "%016llx",
                static_cast<unsigned long long>(out.result.stats.trace_hash));
  j["stats"] = {{"h_calls", out.result.stats.h_calls},
                {"iterations", out.result.stats.iterations},
                {"nodes_pruned_estimate", out.result.stats.nodes_pruned_estimate},
                {"wall_ms", out.result.stats.wall_ms},
                {"trace", trace}};
  nlohmann::json learned = nlohmann::json::array();
  for (const Clause& c : out.result.learned) {
    nlohmann::json jc = nlohmann::json::array();
    for (const PartialOrder& p : c.disjuncts) jc.push_back({p.before, p.after});
    learned.push_back(jc);
  }
  j["learned_clauses"] = learned;
  if (!out.reason.empty()) j["reason"] = out.reason;
  return j;
}

}  // namespace cdito

#endif  // CDITO_RUN_HPP
