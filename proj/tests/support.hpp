// Shared fixtures and independent oracles for the test suites. Oracles here
// must not reuse the library's search machinery: permutations come from
// std::next_permutation and satisfiability checks are plain scans.

#ifndef CDITO_TESTS_SUPPORT_HPP
#define CDITO_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "cdito/order.hpp"
#include "cdito/solver.hpp"

namespace testsupport {

using cdito::CheckResult;
using cdito::Clause;
using cdito::Conflict;
using cdito::ConsistencyFn;
using cdito::PartialOrder;
using cdito::TotalOrder;

inline Clause clause(std::initializer_list<PartialOrder> ps) { return Clause{{ps}}; }
inline Conflict conflict(std::initializer_list<PartialOrder> ps) { return Conflict{{ps}}; }

// Mission fixture over events 1..5: 1 = first flow's start, 2 = mission
// start (= the two other flows' starts), 3/4 = their ends, 5 = first flow's
// end. Clause 4 demands some other flow end before flow 1 starts.
inline std::vector<Clause> golden_phi() {
  return {
      clause({{1, 5}}),
      clause({{2, 3}}),
      clause({{2, 4}}),
      clause({{3, 1}, {4, 1}}),
  };
}

inline Conflict golden_c4() { return conflict({{1, 3}, {1, 4}}); }
inline Conflict golden_c5() { return conflict({{1, 4}, {2, 5}}); }
inline Conflict golden_c6() { return conflict({{3, 1}, {4, 1}}); }
inline Clause golden_phi5() { return clause({{4, 1}, {5, 2}}); }
inline Clause golden_phi6() { return clause({{1, 3}, {1, 4}}); }

// Consistency callback replaying the two grounded conflicts of the mission
// fixture: flows 1 and 3 must not overlap (c5), and flow 1 must start before
// both other flows end is forbidden (c6).
inline ConsistencyFn scripted_golden_h(std::vector<TotalOrder>* log = nullptr) {
  return [log](const TotalOrder& order) -> CheckResult {
    if (log) log->push_back(order);
    if (golden_c5().active_in(order)) return {false, {golden_c5()}};
    if (golden_c6().active_in(order)) return {false, {golden_c6()}};
    return {true, {}};
  };
}

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

inline bool satisfies_all(const TotalOrder& order, const std::vector<Clause>& phi) {
  for (const Clause& c : phi)
    if (!c.satisfied_by(order)) return false;
  return true;
}

// True when some total order satisfies every clause and the predicate.
inline bool brute_force_satisfiable(int n, const std::vector<Clause>& phi,
                                    const std::function<bool(const TotalOrder&)>& ok) {
  for (const auto& seq : all_permutations(n)) {
    TotalOrder order = TotalOrder::from_sequence(seq);
    if (satisfies_all(order, phi) && ok(order)) return true;
  }
  return false;
}

// `given` entails `target` iff no order satisfies all of `given` while
// violating `target`.
inline bool entails(int n, const std::vector<Clause>& given, const Clause& target) {
  for (const auto& seq : all_permutations(n)) {
    TotalOrder order = TotalOrder::from_sequence(seq);
    if (satisfies_all(order, given) && !target.satisfied_by(order)) return false;
  }
  return true;
}

inline PartialOrder random_pair(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ev(1, n);
  int a = ev(rng);
  int b = ev(rng);
  while (b == a) b = ev(rng);
  return {a, b};
}

inline std::vector<Clause> random_clauses(int n, int count, int max_width,
                                          std::mt19937_64& rng) {
  std::uniform_int_distribution<int> width(1, max_width);
  std::vector<Clause> out;
  for (int i = 0; i < count; ++i) {
    Clause c;
    int w = width(rng);
    for (int k = 0; k < w; ++k) c.disjuncts.push_back(random_pair(n, rng));
    out.push_back(std::move(c));
  }
  return out;
}

inline TotalOrder random_order(int n, std::mt19937_64& rng) {
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 1);
  std::shuffle(seq.begin(), seq.end(), rng);
  return TotalOrder::from_sequence(seq);
}

// A grounded-check stand-in with hidden forbidden conjunctions: consistent
// iff none is active, and reports exactly the active ones.
struct HiddenInstance {
  int n = 0;
  std::vector<Clause> phi;
  std::vector<Conflict> hidden;

  ConsistencyFn h() const {
    std::vector<Conflict> local = hidden;
    return [local](const TotalOrder& order) -> CheckResult {
      CheckResult r;
      for (const Conflict& c : local)
        if (c.active_in(order)) r.conflicts.push_back(c);
      r.consistent = r.conflicts.empty();
      return r;
    };
  }

  bool consistent_order(const TotalOrder& order) const {
    for (const Conflict& c : hidden)
      if (c.active_in(order)) return false;
    return true;
  }

  bool brute_sat() const {
    for (const auto& seq : all_permutations(n)) {
      TotalOrder order = TotalOrder::from_sequence(seq);
      if (satisfies_all(order, phi) && consistent_order(order)) return true;
    }
    return false;
  }
};

inline HiddenInstance random_hidden_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 6);
  std::uniform_int_distribution<int> clause_count(0, 5);
  std::uniform_int_distribution<int> hidden_count(0, 4);
  std::uniform_int_distribution<int> conj_width(1, 3);
  HiddenInstance inst;
  inst.n = size(rng);
  inst.phi = random_clauses(inst.n, clause_count(rng), 3, rng);
  int hc = hidden_count(rng);
  for (int i = 0; i < hc; ++i) {
    Conflict c;
    int w = conj_width(rng);
    for (int k = 0; k < w; ++k) c.conjuncts.push_back(random_pair(inst.n, rng));
    inst.hidden.push_back(std::move(c));
  }
  return inst;
}

}  // namespace testsupport

#endif  // CDITO_TESTS_SUPPORT_HPP
