// Conflict resolution on the total order tree.
//
// The constituent kernel of an active conflict is the first move (in visit
// order) that negates one of its partial orders; the combined kernel is the
// latest constituent kernel over all conflicts, i.e. the first move whose
// subtree can still contain a consistent order. Everything strictly before
// the combined kernel is provably inconsistent and gets skipped.

#ifndef CDITO_KERNEL_HPP
#define CDITO_KERNEL_HPP

#include <span>

#include "cdito/order.hpp"

namespace cdito {

enum class KernelKind {
  Child,       // move lands on a child of the current node (i < l)
  Sibling,     // requires moving the level event or beyond (l <= i < inf)
  Infeasible,  // some conflict needs an event that is pinned in this subtree
};

struct KernelResult {
  OrderMove move;
  KernelKind kind;
};

inline KernelKind classify_kernel(OrderMove move, int level) {
  if (move.is_infinite()) return KernelKind::Infeasible;
  return move.from < level ? KernelKind::Child : KernelKind::Sibling;
}

// First move negating some conjunct of `conflict`, restricted to conjuncts
// whose earlier EVENT is <= level (larger events cannot move in this
// subtree). Infinite when no conjunct qualifies.
inline OrderMove constituent_kernel(const TotalOrder& order, const Conflict& conflict,
                                    int level) {
  if (!conflict.active_in(order))
    throw UsageError("constituent_kernel: conflict not active in order");
  const int n = order.size();
  OrderMove best = OrderMove::infinite();
  for (const PartialOrder& q : conflict.conjuncts) {
    // Moving `before` to right after `after`'s position is the first move
    // that flips this pair; anything earlier leaves it intact.
    OrderMove m{order.position_of(q.before), order.position_of(q.after)};
    if (q.before <= level && m.rank(n) < best.rank(n)) best = m;
  }
  return best;
}

// Combined kernel for the current node: max-rank choice among the plain
// successor move and each conflict's constituent kernel. Returns infinite as
// soon as one conflict is unsolvable anywhere in this subtree.
inline OrderMove next_move(const TotalOrder& order, std::span<const Conflict> conflicts,
                           const SearchStatus& status) {
  const int n = order.size();
  OrderMove combined = status.move_to != n
                           ? OrderMove{status.move_from, status.move_to + 1}
                           : OrderMove{status.move_from + 1, status.move_from + 2};
  for (const Conflict& c : conflicts) {
    if (!c.active_in(order)) throw UsageError("next_move: conflict not active in order");
    OrderMove kernel = OrderMove::infinite();
    bool dominated = false;
    for (const PartialOrder& q : c.conjuncts) {
      OrderMove m{order.position_of(q.before), order.position_of(q.after)};
      if (m.rank(n) <= combined.rank(n)) {
        // This conflict resolves no later than the incumbent; it cannot
        // raise the max, so stop scanning it.
        dominated = true;
        break;
      }
      if (q.before <= status.level && m.rank(n) < kernel.rank(n)) kernel = m;
    }
    if (dominated) continue;
    if (kernel.is_infinite()) return OrderMove::infinite();
    if (kernel.rank(n) > combined.rank(n)) combined = kernel;
  }
  return combined;
}

inline KernelResult next_move_classified(const TotalOrder& order,
                                         std::span<const Conflict> conflicts,
                                         const SearchStatus& status) {
  OrderMove m = next_move(order, conflicts, status);
  return {m, classify_kernel(m, status.level)};
}

}  // namespace cdito

#endif  // CDITO_KERNEL_HPP
