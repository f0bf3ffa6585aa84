// Core data model for total-order search: events, total orders, order moves,
// clauses over partial orders and their negated conflicts.
//
// Conventions (used consistently across the library):
//   - events are the integers 1..n
//   - positions are 1-based; position 0 is only valid as the target of a
//     front-insertion move (the undo of a move that pulled an element off
//     the front block)
//   - a forward tree move (i -> j) has i < j; its undo is (j -> i-1)

#ifndef CDITO_ORDER_HPP
#define CDITO_ORDER_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdito {

// Caller broke a documented precondition.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The problem instance itself is broken (e.g. the base temporal network has a
// negative cycle), as opposed to an ordering being inconsistent.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A consistency callback returned something that violates its contract.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Event = int;

// a strictly before b.
struct PartialOrder {
  Event before = 0;
  Event after = 0;

  // Strict ordering: the negation of (a < b) is (b < a).
  PartialOrder negated() const { return {after, before}; }

  friend bool operator==(const PartialOrder&, const PartialOrder&) = default;
  friend auto operator<=>(const PartialOrder&, const PartialOrder&) = default;
};

// Delete the element at position `from` and reinsert it right after the
// element that sat at position `to`. `to` == 0 reinserts at the front.
struct OrderMove {
  int from = 0;
  int to = 0;

  static constexpr int kInf = std::numeric_limits<int>::max();
  static constexpr OrderMove infinite() { return {kInf, kInf}; }
  constexpr bool is_infinite() const { return from == kInf; }

  // Search visits forward moves in ascending n*i + j order.
  std::uint64_t rank(int n) const {
    if (is_infinite()) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t(n) * std::uint64_t(from) + std::uint64_t(to);
  }

  friend bool operator==(const OrderMove&, const OrderMove&) = default;
};

// Inverse of a forward move (i -> j): take the element back from position j
// and put it right after position i-1.
inline OrderMove undo_of(OrderMove move) {
  if (move.is_infinite() || move.from >= move.to)
    throw UsageError("undo_of: expected a forward move (i < j)");
  return {move.to, move.from - 1};
}

// A permutation of 1..n with its inverse position index kept in lockstep.
class TotalOrder {
 public:
  static TotalOrder root(int n) {
    if (n < 1) throw UsageError("TotalOrder: n must be >= 1");
    TotalOrder t;
    t.seq_.resize(n + 1);
    t.pos_.resize(n + 1);
    std::iota(t.seq_.begin(), t.seq_.end(), 0);
    std::iota(t.pos_.begin(), t.pos_.end(), 0);
    return t;
  }

  static TotalOrder of(std::initializer_list<Event> events) {
    return from_sequence(std::vector<Event>(events));
  }

  static TotalOrder from_sequence(const std::vector<Event>& events) {
    const int n = static_cast<int>(events.size());
    if (n < 1) throw UsageError("TotalOrder: empty sequence");
    TotalOrder t;
    t.seq_.assign(n + 1, 0);
    t.pos_.assign(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
      Event e = events[k - 1];
      if (e < 1 || e > n || t.pos_[e] != 0)
        throw UsageError("TotalOrder: sequence is not a permutation of 1..n");
      t.seq_[k] = e;
      t.pos_[e] = k;
    }
    return t;
  }

  int size() const { return static_cast<int>(seq_.size()) - 1; }

  Event event_at(int pos) const {
    if (pos < 1 || pos > size()) throw UsageError("event_at: position out of range");
    return seq_[pos];
  }

  int position_of(Event e) const {
    if (e < 1 || e > size()) throw UsageError("position_of: event out of range");
    return pos_[e];
  }

  // Minimum l with seq[l] != l; n for the identity order.
  int level() const {
    const int n = size();
    for (int l = 1; l <= n; ++l)
      if (seq_[l] != l) return l;
    return n;
  }

  bool holds(PartialOrder p) const { return position_of(p.before) < position_of(p.after); }

  // In-place application; both forward (to >= from) and undo (to < from)
  // moves are supported.
  void apply(OrderMove m) {
    const int n = size();
    if (m.is_infinite()) throw UsageError("apply: infinite move");
    if (m.from < 1 || m.from > n || m.to < 0 || m.to > n)
      throw UsageError("apply: move out of range");
    const Event moved = seq_[m.from];
    if (m.to >= m.from) {
      for (int k = m.from; k < m.to; ++k) {
        seq_[k] = seq_[k + 1];
        pos_[seq_[k]] = k;
      }
      seq_[m.to] = moved;
      pos_[moved] = m.to;
    } else {
      for (int k = m.from; k > m.to + 1; --k) {
        seq_[k] = seq_[k - 1];
        pos_[seq_[k]] = k;
      }
      seq_[m.to + 1] = moved;
      pos_[moved] = m.to + 1;
    }
  }

  std::vector<Event> sequence() const { return {seq_.begin() + 1, seq_.end()}; }

  std::string to_string() const {
    std::string s;
    const int n = size();
    if (n <= 9) {
      for (int k = 1; k <= n; ++k) s += char('0' + seq_[k]);
    } else {
      for (int k = 1; k <= n; ++k) {
        if (k > 1) s += ',';
        s += std::to_string(seq_[k]);
      }
    }
    return s;
  }

  friend bool operator==(const TotalOrder& a, const TotalOrder& b) { return a.seq_ == b.seq_; }

 private:
  TotalOrder() = default;
  std::vector<Event> seq_;  // position -> event; index 0 unused
  std::vector<int> pos_;    // event -> position; index 0 unused
};

// Disjunction of partial orders. An empty clause is unsatisfiable and marks
// the whole clause set inconsistent.
struct Clause {
  std::vector<PartialOrder> disjuncts;

  bool satisfied_by(const TotalOrder& order) const {
    for (const PartialOrder& p : disjuncts)
      if (order.holds(p)) return true;
    return false;
  }

  friend bool operator==(const Clause&, const Clause&) = default;
};

// Conjunction of partial orders, all implied by some inconsistent order. The
// empty conflict is active everywhere (its negation is the empty clause).
struct Conflict {
  std::vector<PartialOrder> conjuncts;

  bool active_in(const TotalOrder& order) const {
    for (const PartialOrder& p : conjuncts)
      if (!order.holds(p)) return false;
    return true;
  }

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

inline Conflict negate(const Clause& clause) {
  Conflict c;
  c.conjuncts.reserve(clause.disjuncts.size());
  for (const PartialOrder& p : clause.disjuncts) c.conjuncts.push_back(p.negated());
  return c;
}

inline Clause negate(const Conflict& conflict) {
  Clause c;
  c.disjuncts.reserve(conflict.conjuncts.size());
  for (const PartialOrder& p : conflict.conjuncts) c.disjuncts.push_back(p.negated());
  return c;
}

// Sorted-conjunct key, used wherever two clauses/conflicts are compared for
// identity rather than pointer or insertion order.
inline std::vector<PartialOrder> canonical_key(std::vector<PartialOrder> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

// Functional flavors of the primitive ops.
inline int level(const TotalOrder& order) { return order.level(); }

inline TotalOrder apply_move(const TotalOrder& order, OrderMove move) {
  TotalOrder out = order;
  out.apply(move);
  return out;
}

// For every clause with no satisfied disjunct, the negated clause is an
// active conflict. Output follows input clause order.
inline std::vector<Conflict> violated_conflicts(const TotalOrder& order,
                                                const std::vector<Clause>& phi) {
  std::vector<Conflict> out;
  for (const Clause& clause : phi)
    if (!clause.satisfied_by(order)) out.push_back(negate(clause));
  return out;
}

// Per-depth search bookkeeping: the last move tried from this node and the
// node's level, which bounds which events may still be moved below it.
struct SearchStatus {
  int move_from = 1;
  int move_to = 1;
  int level = 0;

  OrderMove last_move() const { return {move_from, move_to}; }

  friend bool operator==(const SearchStatus&, const SearchStatus&) = default;
};

using SearchStack = std::vector<SearchStatus>;  // back() = current node

}  // namespace cdito

#endif  // CDITO_ORDER_HPP
