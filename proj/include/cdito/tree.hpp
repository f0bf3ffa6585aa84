// Total order tree: child generation and the systematic depth-first
// enumerator over all n! orders.
//
// From a node with level l the feasible edges are the moves (i -> j) with
// i < l and i < j <= n, visited in ascending n*i + j order. Each such child
// has level exactly i. Note that a node therefore has sum_{i<l}(n-i)
// children, which collapses to n(n-1)/2 only at the root.

#ifndef CDITO_TREE_HPP
#define CDITO_TREE_HPP

#include <utility>
#include <vector>

#include "cdito/order.hpp"

namespace cdito {

// All (move, child) pairs in visit order. Convenience/teaching form; the
// enumerator below never copies orders.
inline std::vector<std::pair<OrderMove, TotalOrder>> children(const TotalOrder& order) {
  const int n = order.size();
  const int l = order.level();
  std::vector<std::pair<OrderMove, TotalOrder>> out;
  for (int i = 1; i < l; ++i)
    for (int j = i + 1; j <= n; ++j) {
      OrderMove m{i, j};
      out.emplace_back(m, apply_move(order, m));
    }
  return out;
}

// Depth-first walk of the total order tree, one order at a time. The current
// order is mutated in place by forward moves and their undos; the status
// stack mirrors the path from the root.
class TotalOrderEnumerator {
 public:
  explicit TotalOrderEnumerator(int n) : order_(TotalOrder::root(n)) {
    stack_.push_back({1, 1, n});
  }

  TotalOrderEnumerator(TotalOrder start, SearchStack stack)
      : order_(std::move(start)), stack_(std::move(stack)) {
    if (stack_.empty()) throw UsageError("TotalOrderEnumerator: empty status stack");
  }

  bool done() const { return stack_.empty(); }
  const TotalOrder& current() const { return order_; }
  const SearchStack& stack() const { return stack_; }

  // Advance to the next order in visit order; false once the tree is spent.
  bool advance() {
    while (!stack_.empty()) {
      SearchStatus& top = stack_.back();
      OrderMove next = successor_move(top);
      if (next.from < top.level) {
        top.move_from = next.from;
        top.move_to = next.to;
        order_.apply(next);
        stack_.push_back({1, 1, next.from});
        return true;
      }
      stack_.pop_back();
      if (!stack_.empty()) order_.apply(undo_of(stack_.back().last_move()));
    }
    return false;
  }

  // First move after status (i, j): (i -> j+1), rolling over to the next
  // source position once j hits the right end.
  OrderMove successor_move(const SearchStatus& st) const {
    if (st.move_to != order_.size()) return {st.move_from, st.move_to + 1};
    return {st.move_from + 1, st.move_from + 2};
  }

 private:
  TotalOrder order_;
  SearchStack stack_;
};

// Every total order of 1..n exactly once, root first.
inline std::vector<TotalOrder> enumerate_all(int n) {
  std::vector<TotalOrder> out;
  TotalOrderEnumerator e(n);
  out.push_back(e.current());
  while (e.advance()) out.push_back(e.current());
  return out;
}

}  // namespace cdito

#endif  // CDITO_TREE_HPP
