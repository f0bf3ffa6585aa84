// Conflict-directed total order search (the `cdito` solver) and the
// systematic baseline (`ito`) it is benchmarked against.
//
// Both walk the same tree. The baseline visits orders in plain depth-first
// order and only consults the clause set and the consistency callback. The
// conflict-directed solver additionally
//   - learns the negation of every conflict the callback reports,
//   - collects the conflicts of all violated clauses at each node, and
//   - jumps straight to the combined kernel, pruning everything in between.

#ifndef CDITO_SOLVER_HPP
#define CDITO_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdito/kernel.hpp"
#include "cdito/order.hpp"
#include "cdito/tree.hpp"

namespace cdito {

// Outcome of one grounded consistency check. When consistent is false the
// conflicts must be non-empty and every conflict active in the queried order;
// an empty conjunct list is the "inconsistent regardless of order" signal.
struct CheckResult {
  bool consistent = true;
  std::vector<Conflict> conflicts;
};

using ConsistencyFn = std::function<CheckResult(const TotalOrder&)>;

struct Budget {
  std::uint64_t max_iterations = 0;          // 0 = unlimited
  std::chrono::milliseconds time_limit{0};   // 0 = unlimited
};

enum class SolveStatus { Solved, Unsat, Timeout };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "SOLVED";
    case SolveStatus::Unsat: return "UNSAT";
    case SolveStatus::Timeout: return "TIMEOUT";
  }
  return "?";
}

struct SolveStats {
  std::uint64_t h_calls = 0;     // grounded checks only, not clause checks
  std::uint64_t iterations = 0;
  std::uint64_t nodes_pruned_estimate = 0;  // skipped frontier branches
  double wall_ms = 0.0;
  std::uint64_t trace_hash = 0;  // digest of the move/backtrack sequence
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<TotalOrder> order;
  std::vector<Clause> learned;
  SolveStats stats;
};

// Ordered clause set with canonical-form deduplication. An empty clause
// anywhere makes the set inconsistent.
class ClauseSet {
 public:
  ClauseSet() = default;
  explicit ClauseSet(const std::vector<Clause>& clauses) {
    for (const Clause& c : clauses) add(c);
  }

  bool add(Clause c) {
    if (!keys_.insert(canonical_key(c.disjuncts)).second) return false;
    if (c.disjuncts.empty()) has_empty_ = true;
    clauses_.push_back(std::move(c));
    return true;
  }

  bool contains(const Clause& c) const { return keys_.count(canonical_key(c.disjuncts)) > 0; }
  bool inconsistent() const { return has_empty_; }
  std::size_t size() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool satisfied_by(const TotalOrder& order) const {
    for (const Clause& c : clauses_)
      if (!c.satisfied_by(order)) return false;
    return true;
  }

 private:
  std::vector<Clause> clauses_;
  std::set<std::vector<PartialOrder>> keys_;
  bool has_empty_ = false;
};

// One learned clause per conflict: the De Morgan negation over strict orders.
inline std::vector<Clause> learn_clauses(const std::vector<Conflict>& conflicts) {
  std::vector<Clause> out;
  out.reserve(conflicts.size());
  for (const Conflict& c : conflicts) out.push_back(negate(c));
  return out;
}

namespace detail {

inline void validate_clauses(int n, const std::vector<Clause>& phi) {
  for (const Clause& c : phi)
    for (const PartialOrder& p : c.disjuncts) {
      if (p.before < 1 || p.before > n || p.after < 1 || p.after > n)
        throw UsageError("clause references an event outside 1..n");
      if (p.before == p.after) throw UsageError("partial order with equal endpoints");
    }
}

inline std::uint64_t fnv_step(std::uint64_t h, std::uint64_t x) {
  h ^= x;
  return h * 1099511628211ULL;
}

// Number of feasible child moves m with rank(first) <= rank(m) < rank(bound).
inline std::uint64_t count_frontier_moves(OrderMove first, OrderMove bound, int level,
                                          int n) {
  if (first.is_infinite()) return 0;
  std::uint64_t count = 0;
  OrderMove m = first;
  while (m.from < level && m.rank(n) < bound.rank(n)) {
    ++count;
    m = m.to != n ? OrderMove{m.from, m.to + 1} : OrderMove{m.from + 1, m.from + 2};
  }
  return count;
}

class Deadline {
 public:
  explicit Deadline(const Budget& b)
      : limited_(b.time_limit.count() > 0),
        end_(std::chrono::steady_clock::now() + b.time_limit) {}
  bool expired() const { return limited_ && std::chrono::steady_clock::now() >= end_; }

 private:
  bool limited_;
  std::chrono::steady_clock::time_point end_;
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

// Conflict-directed search. Starts from the root (or a caller-supplied node
// plus its status stack) and returns the first order that satisfies the
// clause set and the consistency callback.
inline SolveResult solve(int n, const std::vector<Clause>& phi, const ConsistencyFn& h,
                         const Budget& budget = {},
                         std::optional<std::pair<TotalOrder, SearchStack>> start = {}) {
  detail::validate_clauses(n, phi);

  TotalOrder order = start ? start->first : TotalOrder::root(n);
  SearchStack stack = start ? start->second : SearchStack{{1, 1, n}};
  if (order.size() != n) throw UsageError("solve: start order has wrong size");
  if (stack.empty()) throw UsageError("solve: start stack is empty");

  ClauseSet clauses(phi);
  const std::size_t input_count = clauses.size();

  SolveResult res;
  detail::Stopwatch watch;
  detail::Deadline deadline(budget);
  std::uint64_t trace = 1469598103934665603ULL;

  auto finish = [&](SolveStatus status, std::optional<TotalOrder> solution) {
    res.status = status;
    res.order = std::move(solution);
    res.learned.assign(clauses.clauses().begin() + input_count, clauses.clauses().end());
    res.stats.trace_hash = trace;
    res.stats.wall_ms = watch.ms();
    return res;
  };

  while (!clauses.inconsistent() && !stack.empty()) {
    if (budget.max_iterations && res.stats.iterations >= budget.max_iterations)
      return finish(SolveStatus::Timeout, {});
    if (deadline.expired()) return finish(SolveStatus::Timeout, {});
    ++res.stats.iterations;

    if (clauses.satisfied_by(order)) {
      ++res.stats.h_calls;
      CheckResult check = h(order);
      if (check.consistent) return finish(SolveStatus::Solved, order);
      if (check.conflicts.empty())
        throw IntegrityError("consistency function reported inconsistent with no conflicts");
      for (const Conflict& c : check.conflicts) {
        if (!c.active_in(order))
          throw IntegrityError("consistency function returned a conflict not active in " +
                               order.to_string());
        clauses.add(negate(c));
      }
    }

    const SearchStatus status = stack.back();
    const std::vector<Conflict> conflicts = violated_conflicts(order, clauses.clauses());
    const OrderMove kernel = next_move(order, conflicts, status);
    const OrderMove successor = status.move_to != n
                                    ? OrderMove{status.move_from, status.move_to + 1}
                                    : OrderMove{status.move_from + 1, status.move_from + 2};

    if (!kernel.is_infinite() && kernel.from < status.level) {
      // Child jump; everything between the plain successor and the kernel is
      // inconsistent and skipped.
      res.stats.nodes_pruned_estimate +=
          detail::count_frontier_moves(successor, kernel, status.level, n);
      order.apply(kernel);
      stack.back() = {kernel.from, kernel.to, status.level};
      stack.push_back({1, 1, kernel.from});
      trace = detail::fnv_step(detail::fnv_step(trace, 1), kernel.rank(n));
      continue;
    }

    // Backtrack. The kernel type decides how much of the parent's frontier
    // survives.
    res.stats.nodes_pruned_estimate += detail::count_frontier_moves(
        successor, OrderMove::infinite(), status.level, n);
    stack.pop_back();
    if (stack.empty()) break;
    SearchStatus& parent = stack.back();
    order.apply(undo_of(parent.last_move()));
    if (kernel.is_infinite()) {
      // Some conflict needs an event pinned at this level: drop every
      // remaining sibling that re-pins it.
      if (parent.move_to < n)
        res.stats.nodes_pruned_estimate += std::uint64_t(n - parent.move_to);
      parent.move_from += 1;
      parent.move_to = parent.move_from;
      trace = detail::fnv_step(trace, 3);
    } else if (kernel.from > status.level) {
      // Kernel reaches a later sibling; skip the siblings in between.
      if (kernel.to - 1 > parent.move_to)
        res.stats.nodes_pruned_estimate += std::uint64_t(kernel.to - 1 - parent.move_to);
      parent.move_to = kernel.to - 1;
      trace = detail::fnv_step(detail::fnv_step(trace, 2), kernel.rank(n));
    } else {
      // kernel.from == status.level: plain exhaustion, as in the baseline.
      trace = detail::fnv_step(trace, 4);
    }
  }
  return finish(SolveStatus::Unsat, {});
}

// Systematic baseline: depth-first over the whole tree, checking the clause
// set first (cheap) and calling the consistency function on survivors.
// Conflicts returned by the callback are ignored; nothing is learned.
inline SolveResult ito_solve(int n, const std::vector<Clause>& phi, const ConsistencyFn& h,
                             const Budget& budget = {}) {
  detail::validate_clauses(n, phi);
  ClauseSet clauses(phi);

  SolveResult res;
  detail::Stopwatch watch;
  detail::Deadline deadline(budget);

  auto finish = [&](SolveStatus status, std::optional<TotalOrder> solution) {
    res.status = status;
    res.order = std::move(solution);
    res.stats.wall_ms = watch.ms();
    return res;
  };

  if (clauses.inconsistent()) return finish(SolveStatus::Unsat, {});

  TotalOrderEnumerator walk(n);
  while (true) {
    if (budget.max_iterations && res.stats.iterations >= budget.max_iterations)
      return finish(SolveStatus::Timeout, {});
    if ((res.stats.iterations & 0x3f) == 0 && deadline.expired())
      return finish(SolveStatus::Timeout, {});
    ++res.stats.iterations;

    const TotalOrder& order = walk.current();
    res.stats.trace_hash = detail::fnv_step(res.stats.trace_hash + 1, res.stats.iterations);
    if (clauses.satisfied_by(order)) {
      if (deadline.expired()) return finish(SolveStatus::Timeout, {});
      ++res.stats.h_calls;
      if (h(order).consistent) return finish(SolveStatus::Solved, order);
    }
    if (!walk.advance()) break;
  }
  return finish(SolveStatus::Unsat, {});
}

}  // namespace cdito

#endif  // CDITO_SOLVER_HPP
