#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cdito/stn.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace cdito;
using stn::TemporalConstraint;
using stn::TemporalNetwork;

namespace {

// Oracle: consistency with ordering edges on every ordered pair, expressed by
// folding the pairs into the base network as [0, inf) constraints.
bool all_pairs_consistent(const TemporalNetwork& tn, const TotalOrder& order) {
  TemporalNetwork aug = tn;
  const int n = order.size();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      aug.constraints.push_back(
          {order.event_at(a), order.event_at(b), 0, stn::kNoUpperBound});
  try {
    return stn::check_order(aug, order).consistent;
  } catch (const InstanceError&) {
    return false;  // the augmented base already encodes the inconsistency
  }
}

TemporalNetwork random_network(int n, std::mt19937_64& rng) {
  TemporalNetwork tn;
  tn.num_events = n;
  std::uniform_int_distribution<int> count(0, 2 * n);
  std::uniform_int_distribution<int> ev(1, n);
  std::uniform_int_distribution<std::int64_t> lo(-40, 60);
  std::uniform_int_distribution<std::int64_t> width(0, 80);
  int m = count(rng);
  for (int k = 0; k < m; ++k) {
    int a = ev(rng), b = ev(rng);
    if (a == b) continue;
    std::int64_t l = lo(rng);
    bool open = (rng() % 4) == 0;
    tn.constraints.push_back({a, b, l, open ? stn::kNoUpperBound : l + width(rng)});
  }
  return tn;
}

bool base_consistent(const TemporalNetwork& tn, int n) {
  try {
    // checking against any order either succeeds or classifies the failure
    stn::check_order(tn, TotalOrder::root(n));
    return true;
  } catch (const InstanceError&) {
    return false;
  }
}

}  // namespace

TEST_CASE("no constraints: every order is consistent") {
  TemporalNetwork tn;
  tn.num_events = 3;
  REQUIRE(stn::check_order(tn, TotalOrder::of({3, 1, 2})).consistent);
}

TEST_CASE("ordering against a required lag yields that pair as the conflict") {
  // a -> b in [10s, 20s]; placing b first contradicts it
  TemporalNetwork tn;
  tn.num_events = 2;
  tn.constraints.push_back({1, 2, 10000, 20000});
  auto res = stn::check_order(tn, TotalOrder::of({2, 1}));
  REQUIRE_FALSE(res.consistent);
  REQUIRE(res.conflicts == std::vector<Conflict>{testsupport::conflict({{2, 1}})});
}

TEST_CASE("mission fixture: flow 1 starting after both other ends is temporally dead") {
  auto tn = testsupport::golden_temporal();
  for (auto seq : {std::vector<int>{2, 3, 4, 1, 5}, std::vector<int>{2, 4, 3, 1, 5}}) {
    TotalOrder order = TotalOrder::from_sequence(seq);
    auto res = stn::check_order(tn, order);
    REQUIRE_FALSE(res.consistent);
    REQUIRE_FALSE(res.conflicts.empty());
    for (const Conflict& c : res.conflicts) REQUIRE(c.active_in(order));
  }
}

TEST_CASE("mission fixture: the published order admits a schedule") {
  auto tn = testsupport::golden_temporal();
  TotalOrder order = TotalOrder::of({2, 4, 1, 3, 5});
  REQUIRE(stn::check_order(tn, order).consistent);

  auto t = stn::witness_schedule(tn, order);
  REQUIRE(t[2] == 0);
  // order respected (ties allowed) and all constraints hold
  REQUIRE(t[2] <= t[4]);
  REQUIRE(t[4] <= t[1]);
  REQUIRE(t[1] <= t[3]);
  REQUIRE(t[3] <= t[5]);
  REQUIRE(t[3] - t[4] >= 20000);
  REQUIRE(t[5] - t[1] >= 30000);
  REQUIRE(t[5] - t[1] <= 60000);
  REQUIRE(t[3] <= 70000);
  REQUIRE(t[4] <= 70000);
  REQUIRE(t[5] <= 70000);
}

TEST_CASE("a negative cycle in the base network is an instance error") {
  TemporalNetwork tn;
  tn.num_events = 2;
  tn.constraints.push_back({1, 2, 10, 20});
  tn.constraints.push_back({2, 1, 10, 20});
  REQUIRE_THROWS_AS(stn::check_order(tn, TotalOrder::of({1, 2})), InstanceError);
}

TEST_CASE("constraint validation") {
  TemporalNetwork tn;
  tn.num_events = 2;
  tn.constraints.push_back({1, 2, 30, 20});
  REQUIRE_THROWS_AS(stn::check_order(tn, TotalOrder::of({1, 2})), UsageError);
  tn.constraints = {{1, 7, 0, 1}};
  REQUIRE_THROWS_AS(stn::check_order(tn, TotalOrder::of({1, 2})), UsageError);
}

TEST_CASE("reported conflicts are active and re-close a negative cycle") {
  std::mt19937_64 rng(41);
  int tested = 0;
  while (tested < 300) {
    int n = 2 + int(rng() % 7);
    TemporalNetwork tn = random_network(n, rng);
    if (!base_consistent(tn, n)) continue;
    TotalOrder order = testsupport::random_order(n, rng);
    auto res = stn::check_order(tn, order);
    ++tested;
    if (res.consistent) continue;
    REQUIRE_FALSE(res.conflicts.empty());
    for (const Conflict& c : res.conflicts) {
      REQUIRE_FALSE(c.conjuncts.empty());
      REQUIRE(c.active_in(order));
      // the conflict's precedences alone must already be inconsistent with
      // the base network
      TemporalNetwork aug = tn;
      for (const PartialOrder& p : c.conjuncts)
        aug.constraints.push_back({p.before, p.after, 0, stn::kNoUpperBound});
      REQUIRE_THROWS_AS(stn::check_order(aug, TotalOrder::root(n)), InstanceError);
    }
  }
}

TEST_CASE("consecutive-pair and all-pairs encodings agree on consistency") {
  std::mt19937_64 rng(43);
  int tested = 0;
  while (tested < 300) {
    int n = 2 + int(rng() % 5);
    TemporalNetwork tn = random_network(n, rng);
    if (!base_consistent(tn, n)) continue;
    TotalOrder order = testsupport::random_order(n, rng);
    ++tested;
    REQUIRE(stn::check_order(tn, order).consistent == all_pairs_consistent(tn, order));
  }
}

TEST_CASE("minimization never weakens soundness on the mission fixture") {
  // an order that implies the conflict of another inconsistent order stays
  // inconsistent; spot-check by re-checking each conflict's closure
  auto tn = testsupport::golden_temporal();
  for (const auto& seq : testsupport::all_permutations(5)) {
    TotalOrder order = TotalOrder::from_sequence(seq);
    auto res = stn::check_order(tn, order);
    if (res.consistent) continue;
    for (const Conflict& c : res.conflicts) REQUIRE(c.active_in(order));
  }
}
