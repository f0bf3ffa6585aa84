// Temporal network consistency for a given total order.
//
// Interval constraints are held in distance-graph form (edge u->v of weight w
// encodes t_v - t_u <= w). Checking an order adds one zero-weight edge per
// consecutive pair; the order is temporally consistent iff the combined graph
// has no negative cycle. When a negative cycle exists, the ordering edges on
// it form an active conflict: any order implying those same precedences
// reproduces the cycle.
//
// The reported conflict is greedily shrunk by re-running detection with
// single ordering edges dropped, so the conjunct set always corresponds to
// an actual negative cycle with as few order-imposed edges as we can find.
// Smaller conflicts negate into stronger clauses.

#ifndef CDITO_STN_HPP
#define CDITO_STN_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "cdito/order.hpp"

namespace cdito::stn {

constexpr std::int64_t kNoUpperBound = std::numeric_limits<std::int64_t>::max();

// lb <= t_to - t_from <= ub, milliseconds.
struct TemporalConstraint {
  Event from = 0;
  Event to = 0;
  std::int64_t lb_ms = 0;
  std::int64_t ub_ms = kNoUpperBound;

  friend bool operator==(const TemporalConstraint&, const TemporalConstraint&) = default;
};

struct TemporalNetwork {
  int num_events = 0;
  std::vector<TemporalConstraint> constraints;
  Event origin_event = 0;  // 0 = no anchored time origin

  friend bool operator==(const TemporalNetwork&, const TemporalNetwork&) = default;
};

struct StnOptions {
  bool minimize_conflicts = true;
  int max_conflicts = 8;     // independent cycles extracted per check
  bool unit_conflicts = true;  // report base-forbidden precedences directly
};

struct StnResult {
  bool consistent = true;
  std::vector<Conflict> conflicts;
};

namespace detail {

// Weight magnitudes are capped so that iterate-to-fixpoint distances cannot
// overflow 64-bit arithmetic.
constexpr std::int64_t kMaxWeight = 1'000'000'000'000LL;

struct Edge {
  int from = 0;
  int to = 0;
  std::int64_t w = 0;
  int pair_index = -1;  // index into the ordering-pair list; -1 = base edge
};

// Bellman-Ford to fixpoint with predecessor tracking; all distances start at
// zero (implicit super-source). Returns the edge indices of a negative cycle
// recovered by walking predecessors from a vertex relaxed on the final pass.
inline std::optional<std::vector<int>> find_negative_cycle(int n,
                                                           const std::vector<Edge>& edges) {
  std::vector<std::int64_t> dist(n + 1, 0);
  std::vector<int> pred(n + 1, -1);
  int relaxed = -1;
  for (int pass = 0; pass < n + 1; ++pass) {
    relaxed = -1;
    for (int idx = 0; idx < static_cast<int>(edges.size()); ++idx) {
      const Edge& e = edges[idx];
      if (dist[e.from] + e.w < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.w;
        pred[e.to] = idx;
        relaxed = e.to;
      }
    }
    if (relaxed == -1) return std::nullopt;
  }
  // Still relaxing after n+1 passes: walk back far enough to be on a cycle.
  int v = relaxed;
  for (int k = 0; k <= n; ++k) v = edges[pred[v]].from;
  std::vector<int> cycle;
  int u = v;
  do {
    int e = pred[u];
    cycle.push_back(e);
    u = edges[e].from;
  } while (u != v);
  return cycle;
}

inline std::vector<Edge> base_edges(const TemporalNetwork& tn, int n) {
  std::vector<Edge> edges;
  edges.reserve(tn.constraints.size() * 2);
  for (const TemporalConstraint& c : tn.constraints) {
    if (c.from < 1 || c.from > n || c.to < 1 || c.to > n)
      throw UsageError("temporal constraint references an event outside the order");
    if (c.ub_ms != kNoUpperBound && c.lb_ms > c.ub_ms)
      throw UsageError("temporal constraint with lb > ub");
    if (c.lb_ms < -kMaxWeight || (c.ub_ms != kNoUpperBound && c.ub_ms > kMaxWeight) ||
        c.lb_ms > kMaxWeight)
      throw UsageError("temporal constraint bound magnitude too large");
    if (c.ub_ms != kNoUpperBound) edges.push_back({c.from, c.to, c.ub_ms, -1});
    edges.push_back({c.to, c.from, -c.lb_ms, -1});
  }
  return edges;
}

// t_a <= t_b for the consecutive pair (a before b): edge b -> a, weight 0.
inline void append_ordering_edges(std::vector<Edge>& edges,
                                  const std::vector<PartialOrder>& pairs) {
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k)
    edges.push_back({pairs[k].after, pairs[k].before, 0, k});
}

inline std::vector<PartialOrder> pairs_on_cycle(const std::vector<Edge>& edges,
                                                const std::vector<int>& cycle,
                                                const std::vector<PartialOrder>& pairs) {
  std::vector<PartialOrder> out;
  for (int idx : cycle) {
    const Edge& e = edges[idx];
    if (e.pair_index >= 0) out.push_back(pairs[e.pair_index]);
  }
  return out;
}

// Precedences (a before b) that the base network forbids outright: the
// tightest base bound on t_b - t_a is negative, so imposing t_a <= t_b
// closes a cycle no matter what else the order says. All-pairs shortest
// paths; only used for modest event counts.
inline std::vector<PartialOrder> forbidden_precedences(const std::vector<Edge>& base, int n) {
  constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();
  std::vector<std::vector<std::int64_t>> d(n + 1,
                                           std::vector<std::int64_t>(n + 1, kUnreached));
  for (int v = 1; v <= n; ++v) d[v][v] = 0;
  for (const Edge& e : base) d[e.from][e.to] = std::min(d[e.from][e.to], e.w);
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i) {
      if (d[i][k] == kUnreached) continue;
      for (int j = 1; j <= n; ++j) {
        if (d[k][j] == kUnreached) continue;
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  std::vector<PartialOrder> out;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      if (a != b && d[a][b] != kUnreached && d[a][b] < 0) out.push_back({a, b});
  return out;
}

}  // namespace detail

// Consistency of the constraint network alone, no ordering imposed.
inline bool network_consistent(const TemporalNetwork& tn) {
  const auto edges = detail::base_edges(tn, tn.num_events);
  return !detail::find_negative_cycle(tn.num_events, edges).has_value();
}

// Consistency of `tn` tightened by `order`. Each returned conflict holds in
// `order` and its precedences alone, added to the base network, already
// close a negative cycle. After extracting a conflict, its ordering edges
// are withdrawn and detection reruns, so one check can report several
// independent causes. A negative cycle in the base network itself means the
// instance is invalid.
inline StnResult check_order(const TemporalNetwork& tn, const TotalOrder& order,
                             const StnOptions& opts = {}) {
  const int n = order.size();
  if (tn.num_events > n) throw UsageError("temporal network has more events than the order");

  std::vector<PartialOrder> pairs;
  pairs.reserve(n - 1);
  for (int k = 1; k < n; ++k) pairs.push_back({order.event_at(k), order.event_at(k + 1)});

  const std::vector<detail::Edge> base = detail::base_edges(tn, n);
  {
    std::vector<detail::Edge> graph = base;
    detail::append_ordering_edges(graph, pairs);
    if (!detail::find_negative_cycle(n, graph)) return {true, {}};
  }
  if (detail::find_negative_cycle(n, base))
    throw InstanceError("base temporal network has a negative cycle");

  StnResult res;
  res.consistent = false;
  std::set<std::vector<PartialOrder>> seen;
  auto push = [&](Conflict c) {
    if (seen.insert(canonical_key(c.conjuncts)).second) res.conflicts.push_back(std::move(c));
  };

  if (opts.unit_conflicts && n <= 128)
    for (const PartialOrder& p : detail::forbidden_precedences(base, n))
      if (order.holds(p)) push(Conflict{{p}});

  std::vector<PartialOrder> remaining = pairs;
  for (int round = 0; round < std::max(1, opts.max_conflicts); ++round) {
    std::vector<detail::Edge> graph = base;
    detail::append_ordering_edges(graph, remaining);
    auto cycle = detail::find_negative_cycle(n, graph);
    if (!cycle) break;

    std::vector<PartialOrder> conjuncts = detail::pairs_on_cycle(graph, *cycle, remaining);
    // The cycle is simple and the base alone is consistent, so at least one
    // ordering edge is on it.
    if (conjuncts.empty()) throw InstanceError("negative cycle without ordering edges");

    if (opts.minimize_conflicts) {
      bool shrunk = true;
      while (shrunk && conjuncts.size() > 1) {
        shrunk = false;
        for (std::size_t drop = 0; drop < conjuncts.size(); ++drop) {
          std::vector<PartialOrder> candidate;
          for (std::size_t k = 0; k < conjuncts.size(); ++k)
            if (k != drop) candidate.push_back(conjuncts[k]);
          std::vector<detail::Edge> probe = base;
          detail::append_ordering_edges(probe, candidate);
          if (auto c = detail::find_negative_cycle(n, probe)) {
            conjuncts = detail::pairs_on_cycle(probe, *c, candidate);
            shrunk = true;
            break;
          }
        }
      }
    }

    std::vector<PartialOrder> next;
    for (const PartialOrder& p : remaining)
      if (std::find(conjuncts.begin(), conjuncts.end(), p) == conjuncts.end())
        next.push_back(p);
    remaining = std::move(next);
    push(Conflict{std::move(conjuncts)});
  }
  // the first detection saw a cycle, so something was extracted
  if (res.conflicts.empty()) throw InstanceError("inconsistent order yielded no conflict");
  return res;
}

// A concrete event schedule (ms) consistent with the network and the order;
// index 0 is unused. Times are shifted so the origin event (or the earliest
// event) sits at zero.
inline std::vector<std::int64_t> witness_schedule(const TemporalNetwork& tn,
                                                  const TotalOrder& order) {
  const int n = order.size();
  std::vector<detail::Edge> graph = detail::base_edges(tn, n);
  std::vector<PartialOrder> pairs;
  for (int k = 1; k < n; ++k) pairs.push_back({order.event_at(k), order.event_at(k + 1)});
  detail::append_ordering_edges(graph, pairs);

  std::vector<std::int64_t> dist(n + 1, 0);
  for (int pass = 0; pass < n + 1; ++pass) {
    bool relaxed = false;
    for (const detail::Edge& e : graph)
      if (dist[e.from] + e.w < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.w;
        relaxed = true;
      }
    if (!relaxed) break;
    if (pass == n) throw UsageError("witness_schedule: network inconsistent with order");
  }
  std::int64_t shift = 0;
  if (tn.origin_event >= 1 && tn.origin_event <= n) {
    shift = dist[tn.origin_event];
  } else {
    shift = dist[1];
    for (int e = 2; e <= n; ++e) shift = std::min(shift, dist[e]);
  }
  std::vector<std::int64_t> times(n + 1, 0);
  for (int e = 1; e <= n; ++e) times[e] = dist[e] - shift;
  return times;
}

}  // namespace cdito::stn

#endif  // CDITO_STN_HPP
