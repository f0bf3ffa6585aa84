// In-code copy of the three-flow mission fixture (also shipped as
// tests/data/motivating.json). Events: 1 = flow-A start, 2 = mission start
// and the start of flows B and C, 3 = flow-B end, 4 = flow-C end,
// 5 = flow-A end. Only (2,4,1,3,5) is consistent.

#ifndef CDITO_TESTS_GOLDEN_HPP
#define CDITO_TESTS_GOLDEN_HPP

#include "cdito/netconfig.hpp"
#include "cdito/stn.hpp"
#include "support.hpp"

namespace testsupport {

inline cdito::netconfig::Network golden_network() {
  cdito::netconfig::Network net;
  net.nodes = {1, 2, 3};
  net.links = {
      {1, 2, 400, 200, 500},   // the only low-loss, low-delay route
      {1, 3, 1000, 300, 400},  // detour, usable only by the loss/delay-tolerant flow
      {3, 2, 1000, 300, 400},
  };
  return net;
}

inline std::vector<cdito::netconfig::Flow> golden_flows() {
  using cdito::netconfig::Flow;
  // id 1 = Flow-A, 2 = Flow-B, 3 = Flow-C
  return {
      Flow{1, 1, 2, 500, 1000, 200, 30000, 60000, 1, 5},
      Flow{2, 1, 2, 3000, 1000, 360, 30000, 60000, 2, 3},
      Flow{3, 1, 2, 3000, 300, 360, 30000, 60000, 2, 4},
  };
}

inline cdito::stn::TemporalNetwork golden_temporal(bool with_durations = true) {
  cdito::stn::TemporalNetwork tn;
  tn.num_events = 5;
  tn.origin_event = 2;
  // flow C must clear the bottleneck link at least 20s before flow B ends
  tn.constraints.push_back({4, 3, 20000, cdito::stn::kNoUpperBound});
  // 70s mission horizon from the mission start
  tn.constraints.push_back({2, 3, 0, 70000});
  tn.constraints.push_back({2, 4, 0, 70000});
  tn.constraints.push_back({2, 5, 0, 70000});
  if (with_durations) {
    tn.constraints.push_back({1, 5, 30000, 60000});
    tn.constraints.push_back({2, 3, 30000, 60000});
    tn.constraints.push_back({2, 4, 30000, 60000});
  }
  return tn;
}

inline cdito::ConsistencyFn golden_composed_h() {
  return cdito::netconfig::make_h(golden_network(), golden_flows(), golden_temporal());
}

}  // namespace testsupport

#endif  // CDITO_TESTS_GOLDEN_HPP
