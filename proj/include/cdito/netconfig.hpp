// Routing/bandwidth state checker for flows bound to order events, and the
// composition with the temporal checker into a single consistency function.
//
// Each flow gets one fixed path for its whole lifetime, chosen from a cached
// per-flow candidate list (simple paths within the flow's loss and delay
// budgets, shortest delay first, capped). An order is state-consistent when
// some joint path assignment keeps every link within capacity in every
// concurrency interval. On failure the checker emits a conflict over a
// jointly unroutable concurrent flow set: start_i < end_j for all ordered
// pairs, i.e. exactly the precedences that force those flows to overlap.

#ifndef CDITO_NETCONFIG_HPP
#define CDITO_NETCONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdito/log.hpp"
#include "cdito/order.hpp"
#include "cdito/solver.hpp"
#include "cdito/stn.hpp"

namespace cdito::netconfig {

struct Link {
  int u = 0;
  int v = 0;
  std::int64_t loss_millipct = 0;   // percent * 1000
  std::int64_t delay_ms = 0;
  std::int64_t bandwidth_kbps = 0;

  friend bool operator==(const Link&, const Link&) = default;
};

struct Network {
  std::vector<int> nodes;
  std::vector<Link> links;  // directed, at most one per ordered pair

  friend bool operator==(const Network&, const Network&) = default;
};

struct Flow {
  int id = 0;
  int source = 0;
  int sink = 0;
  std::int64_t max_loss_millipct = 0;
  std::int64_t max_delay_ms = 0;
  std::int64_t min_throughput_kbps = 0;
  std::int64_t duration_lo_ms = 0;
  std::int64_t duration_hi_ms = stn::kNoUpperBound;
  Event start_event = 0;
  Event end_event = 0;

  friend bool operator==(const Flow&, const Flow&) = default;
};

struct RoutingPlan {
  std::map<int, std::vector<int>> paths;  // flow id -> node sequence

  friend bool operator==(const RoutingPlan&, const RoutingPlan&) = default;
};

enum class LossModel { Additive, Multiplicative };

struct RouteOptions {
  int max_candidates = 16;                    // per-flow candidate path cap
  std::int64_t path_expansion_budget = 50000; // DFS expansions while listing paths
  std::int64_t assignment_node_budget = 100000;
  bool minimize_conflicts = true;
  LossModel loss_model = LossModel::Additive;
};

struct CandidatePath {
  std::vector<int> nodes;
  std::vector<int> link_ids;  // indices into Network::links
  std::int64_t delay_ms = 0;
  std::int64_t loss_millipct = 0;  // additive aggregate
};

namespace detail {

inline void validate_network(const Network& net) {
  std::set<std::pair<int, int>> seen;
  for (const Link& l : net.links) {
    if (l.loss_millipct < 0 || l.delay_ms < 0 || l.bandwidth_kbps <= 0)
      throw UsageError("link with negative loss/delay or non-positive bandwidth");
    if (!seen.insert({l.u, l.v}).second)
      throw UsageError("duplicate directed link " + std::to_string(l.u) + "->" +
                       std::to_string(l.v));
  }
}

inline bool loss_within(const std::vector<int>& link_ids, const Network& net,
                        std::int64_t max_millipct, LossModel model) {
  if (model == LossModel::Additive) {
    std::int64_t total = 0;
    for (int id : link_ids) total += net.links[id].loss_millipct;
    return total <= max_millipct;
  }
  // 1 - prod(1 - loss); loss fractions are loss_millipct / 100000
  long double keep = 1.0L;
  for (int id : link_ids) keep *= 1.0L - (long double)net.links[id].loss_millipct / 100000.0L;
  long double loss_millipct = (1.0L - keep) * 100000.0L;
  return loss_millipct <= (long double)max_millipct;
}

}  // namespace detail

// Immutable per-flow candidate path lists, shared across every check in one
// solve. Construction fails when some flow has no feasible path at all: no
// ordering can fix that.
class CandidateTable {
 public:
  CandidateTable(const Network& net, const std::vector<Flow>& flows,
                 const RouteOptions& opts = {}) {
    detail::validate_network(net);
    // adjacency sorted by (delay, neighbor) so cheap paths are found first
    std::map<int, std::vector<std::pair<int, int>>> adj;  // node -> (link id, to)
    for (int id = 0; id < static_cast<int>(net.links.size()); ++id)
      adj[net.links[id].u].push_back({id, net.links[id].v});
    for (auto& [node, out] : adj)
      std::sort(out.begin(), out.end(), [&](auto a, auto b) {
        return std::pair(net.links[a.first].delay_ms, a.second) <
               std::pair(net.links[b.first].delay_ms, b.second);
      });

    for (const Flow& f : flows) {
      if (f.start_event == f.end_event) throw UsageError("flow with start == end event");
      if (f.duration_hi_ms != stn::kNoUpperBound && f.duration_lo_ms > f.duration_hi_ms)
        throw UsageError("flow with duration lo > hi");
      if (per_flow_.count(f.id)) throw UsageError("duplicate flow id");

      std::vector<CandidatePath> found;
      std::vector<int> path_nodes{f.source};
      std::vector<int> path_links;
      std::set<int> on_path{f.source};
      std::int64_t expansions = 0;
      bool capped = false;

      // depth-first over simple paths; delay and additive loss only grow, so
      // both prune
      auto dfs = [&](auto&& self, int node, std::int64_t delay, std::int64_t loss) -> void {
        if (capped) return;
        if (node == f.sink) {
          if (detail::loss_within(path_links, net, f.max_loss_millipct, opts.loss_model))
            found.push_back({path_nodes, path_links, delay, loss});
          return;
        }
        auto it = adj.find(node);
        if (it == adj.end()) return;
        for (auto [link_id, to] : it->second) {
          const Link& l = net.links[link_id];
          if (on_path.count(to)) continue;
          if (l.bandwidth_kbps < f.min_throughput_kbps) continue;
          std::int64_t d = delay + l.delay_ms;
          if (d > f.max_delay_ms) continue;
          std::int64_t lo = loss + l.loss_millipct;
          if (opts.loss_model == LossModel::Additive && lo > f.max_loss_millipct) continue;
          if (++expansions > opts.path_expansion_budget) {
            capped = true;
            return;
          }
          path_nodes.push_back(to);
          path_links.push_back(link_id);
          on_path.insert(to);
          self(self, to, d, lo);
          on_path.erase(to);
          path_links.pop_back();
          path_nodes.pop_back();
        }
      };
      dfs(dfs, f.source, 0, 0);

      std::sort(found.begin(), found.end(), [](const CandidatePath& a, const CandidatePath& b) {
        return std::pair(a.delay_ms, a.nodes) < std::pair(b.delay_ms, b.nodes);
      });
      if (static_cast<int>(found.size()) > opts.max_candidates) {
        found.resize(opts.max_candidates);
        truncated_ = true;
      }
      if (capped) {
        truncated_ = true;
        log::warn("path enumeration budget hit for flow " + std::to_string(f.id) +
                  "; candidate list may be incomplete");
      }
      if (found.empty())
        throw InstanceError("flow " + std::to_string(f.id) +
                            " has no path within its loss/delay bounds");
      per_flow_.emplace(f.id, std::move(found));
    }
    if (truncated_)
      log::debug("candidate lists truncated to the configured cap");
  }

  const std::vector<CandidatePath>& for_flow(int flow_id) const {
    auto it = per_flow_.find(flow_id);
    if (it == per_flow_.end()) throw UsageError("unknown flow id");
    return it->second;
  }

  bool truncated() const { return truncated_; }

 private:
  std::map<int, std::vector<CandidatePath>> per_flow_;
  bool truncated_ = false;
};

// Flow ids active in each gap between consecutive events, in gap order,
// empty gaps dropped. Requires every flow's start to precede its end.
inline std::vector<std::vector<int>> concurrency_intervals(const TotalOrder& order,
                                                           const std::vector<Flow>& flows) {
  const int n = order.size();
  for (const Flow& f : flows)
    if (order.position_of(f.start_event) >= order.position_of(f.end_event))
      throw UsageError("flow " + std::to_string(f.id) + " ends before it starts");
  std::vector<std::vector<int>> out;
  for (int gap = 1; gap < n; ++gap) {
    std::vector<int> active;
    for (const Flow& f : flows)
      if (order.position_of(f.start_event) <= gap && gap < order.position_of(f.end_event))
        active.push_back(f.id);
    if (!active.empty()) {
      std::sort(active.begin(), active.end());
      out.push_back(std::move(active));
    }
  }
  return out;
}

struct RouteCheckResult {
  bool feasible = false;
  std::vector<Conflict> conflicts;      // at most one
  std::optional<RoutingPlan> plan;
  bool complete = true;                 // false: assignment budget exhausted
};

namespace detail {

struct AssignmentProblem {
  const Network* net;
  const CandidateTable* table;
  std::vector<const Flow*> flows;                 // assignment order
  std::vector<std::vector<int>> sets;             // distinct concurrent sets
  std::map<int, std::vector<int>> flow_sets;      // flow id -> set indices
};

// Backtracking joint path assignment; loads are per (set, link).
class Assigner {
 public:
  Assigner(const AssignmentProblem& p, std::int64_t budget) : p_(p), budget_(budget) {
    loads_.assign(p.sets.size(), std::map<int, std::int64_t>{});
  }

  bool run() { return assign(0); }
  bool budget_exhausted() const { return exhausted_; }

  RoutingPlan plan() const {
    RoutingPlan plan;
    for (std::size_t k = 0; k < chosen_.size(); ++k)
      plan.paths[p_.flows[k]->id] = p_.table->for_flow(p_.flows[k]->id)[chosen_[k]].nodes;
    return plan;
  }

 private:
  bool assign(std::size_t idx) {
    if (exhausted_) return false;
    if (idx == p_.flows.size()) return true;
    const Flow& f = *p_.flows[idx];
    const auto& candidates = p_.table->for_flow(f.id);
    const auto& set_ids = p_.flow_sets.at(f.id);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      if (!fits(candidates[c], f, set_ids)) continue;
      place(candidates[c], f, set_ids, +1);
      chosen_.push_back(static_cast<int>(c));
      if (assign(idx + 1)) return true;
      chosen_.pop_back();
      place(candidates[c], f, set_ids, -1);
    }
    return false;
  }

  bool fits(const CandidatePath& path, const Flow& f, const std::vector<int>& set_ids) const {
    for (int s : set_ids)
      for (int link : path.link_ids) {
        auto it = loads_[s].find(link);
        std::int64_t used = it == loads_[s].end() ? 0 : it->second;
        if (used + f.min_throughput_kbps > p_.net->links[link].bandwidth_kbps) return false;
      }
    return true;
  }

  void place(const CandidatePath& path, const Flow& f, const std::vector<int>& set_ids,
             int sign) {
    for (int s : set_ids)
      for (int link : path.link_ids) loads_[s][link] += sign * f.min_throughput_kbps;
  }

  const AssignmentProblem& p_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::map<int, std::int64_t>> loads_;
  std::vector<int> chosen_;
};

inline AssignmentProblem single_set_problem(const Network& net, const CandidateTable& table,
                                            const std::vector<Flow>& all,
                                            const std::vector<int>& set) {
  AssignmentProblem p;
  p.net = &net;
  p.table = &table;
  p.sets = {set};
  for (const Flow& f : all)
    if (std::find(set.begin(), set.end(), f.id) != set.end()) {
      p.flows.push_back(&f);
      p.flow_sets[f.id] = {0};
    }
  std::sort(p.flows.begin(), p.flows.end(), [&](const Flow* a, const Flow* b) {
    return std::pair(table.for_flow(a->id).size(), a->id) <
           std::pair(table.for_flow(b->id).size(), b->id);
  });
  return p;
}

inline bool set_alone_routable(const Network& net, const CandidateTable& table,
                               const std::vector<Flow>& all, const std::vector<int>& set,
                               std::int64_t budget) {
  const AssignmentProblem p = single_set_problem(net, table, all, set);
  Assigner a(p, budget);
  return a.run();
}

// start_i < end_j for every ordered pair: the overlap pattern of the set.
inline Conflict concurrency_conflict(const std::vector<int>& set,
                                     const std::vector<Flow>& flows) {
  std::map<int, const Flow*> by_id;
  for (const Flow& f : flows) by_id[f.id] = &f;
  Conflict c;
  for (int i : set)
    for (int j : set)
      if (i != j) c.conjuncts.push_back({by_id.at(i)->start_event, by_id.at(j)->end_event});
  return c;
}

// Fallback conflict: every start-before-end precedence that actually holds
// among the flows involved in any concurrency. Pairwise overlaps imply a
// shared instant, so an order reproducing these precedences reproduces every
// concurrent set and stays unroutable.
inline Conflict concurrency_pattern_conflict(const std::vector<std::vector<int>>& sets,
                                             const std::vector<Flow>& flows,
                                             const TotalOrder& order) {
  std::set<int> involved;
  for (const auto& s : sets)
    if (s.size() > 1) involved.insert(s.begin(), s.end());
  std::map<int, const Flow*> by_id;
  for (const Flow& f : flows) by_id[f.id] = &f;
  Conflict c;
  for (int i : involved)
    for (int j : involved) {
      if (i == j) continue;
      PartialOrder p{by_id.at(i)->start_event, by_id.at(j)->end_event};
      if (order.holds(p)) c.conjuncts.push_back(p);
    }
  return c;
}

}  // namespace detail

// Joint routability of all flows under `order`, one fixed path per flow.
inline RouteCheckResult route_check(const Network& net, const TotalOrder& order,
                                    const std::vector<Flow>& flows,
                                    const CandidateTable& table,
                                    const RouteOptions& opts = {}) {
  RouteCheckResult res;
  if (flows.empty()) {
    res.feasible = true;
    res.plan = RoutingPlan{};
    return res;
  }
  auto interval_sets = concurrency_intervals(order, flows);

  detail::AssignmentProblem p;
  p.net = &net;
  p.table = &table;
  for (const auto& s : interval_sets)
    if (std::find(p.sets.begin(), p.sets.end(), s) == p.sets.end()) p.sets.push_back(s);
  for (const Flow& f : flows) {
    p.flows.push_back(&f);
    auto& ids = p.flow_sets[f.id];
    for (int s = 0; s < static_cast<int>(p.sets.size()); ++s)
      if (std::find(p.sets[s].begin(), p.sets[s].end(), f.id) != p.sets[s].end())
        ids.push_back(s);
  }
  std::sort(p.flows.begin(), p.flows.end(), [&](const Flow* a, const Flow* b) {
    return std::pair(table.for_flow(a->id).size(), a->id) <
           std::pair(table.for_flow(b->id).size(), b->id);
  });

  detail::Assigner assigner(p, opts.assignment_node_budget);
  if (assigner.run()) {
    res.feasible = true;
    res.plan = assigner.plan();
    return res;
  }

  if (assigner.budget_exhausted()) {
    // Unknown is treated as inconsistent so the search can move on; the
    // conflict covers the whole concurrency pattern.
    log::warn("assignment budget exhausted on " + order.to_string() +
              "; treating as unroutable");
    res.complete = false;
    res.conflicts.push_back(detail::concurrency_pattern_conflict(p.sets, flows, order));
    return res;
  }

  // Witness: every concurrent set that is unroutable even in isolation,
  // each greedily shrunk while it stays unroutable.
  std::set<std::vector<PartialOrder>> seen;
  for (const auto& s : p.sets) {
    if (s.size() < 2) continue;
    if (detail::set_alone_routable(net, table, flows, s, opts.assignment_node_budget))
      continue;
    std::vector<int> witness = s;
    if (opts.minimize_conflicts) {
      for (std::size_t k = 0; k < witness.size() && witness.size() > 2;) {
        std::vector<int> reduced;
        for (std::size_t m = 0; m < witness.size(); ++m)
          if (m != k) reduced.push_back(witness[m]);
        if (!detail::set_alone_routable(net, table, flows, reduced,
                                        opts.assignment_node_budget))
          witness = std::move(reduced);  // keep index: next element shifted in
        else
          ++k;
      }
    }
    Conflict c = detail::concurrency_conflict(witness, flows);
    if (seen.insert(canonical_key(c.conjuncts)).second) res.conflicts.push_back(std::move(c));
  }
  if (!res.conflicts.empty()) return res;

  // Every set fits in isolation; the failure comes from one flow being torn
  // between intervals. Fall back to the whole concurrency pattern.
  res.conflicts.push_back(detail::concurrency_pattern_conflict(p.sets, flows, order));
  return res;
}

inline RouteCheckResult route_check(const Network& net, const TotalOrder& order,
                                    const std::vector<Flow>& flows,
                                    const RouteOptions& opts = {}) {
  CandidateTable table(net, flows, opts);
  return route_check(net, order, flows, table, opts);
}

struct HOptions {
  bool state_first = true;  // report state conflicts ahead of temporal ones
  RouteOptions route;
  stn::StnOptions stn;
};

// Composition into the solver-facing consistency function: consistent iff
// jointly routable and temporally consistent; conflicts from every failing
// checker are reported together.
inline ConsistencyFn make_h(const Network& net, const std::vector<Flow>& flows,
                            const stn::TemporalNetwork& tn, const HOptions& opts = {}) {
  auto table = std::make_shared<const CandidateTable>(net, flows, opts.route);
  auto net_copy = std::make_shared<const Network>(net);
  auto flows_copy = std::make_shared<const std::vector<Flow>>(flows);
  auto tn_copy = std::make_shared<const stn::TemporalNetwork>(tn);
  return [=, route_opts = opts.route, stn_opts = opts.stn,
          state_first = opts.state_first](const TotalOrder& order) -> CheckResult {
    RouteCheckResult state =
        route_check(*net_copy, order, *flows_copy, *table, route_opts);
    stn::StnResult time = stn::check_order(*tn_copy, order, stn_opts);
    CheckResult out;
    out.consistent = state.feasible && time.consistent;
    const auto& first = state_first ? state.conflicts : time.conflicts;
    const auto& second = state_first ? time.conflicts : state.conflicts;
    out.conflicts.insert(out.conflicts.end(), first.begin(), first.end());
    out.conflicts.insert(out.conflicts.end(), second.begin(), second.end());
    return out;
  };
}

}  // namespace cdito::netconfig

#endif  // CDITO_NETCONFIG_HPP
