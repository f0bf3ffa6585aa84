// Instance file format (versioned JSON) and the random scenario generator.
//
// Schema, all quantities integer (percent*1000, milliseconds, kbps):
//   {
//     "version": 1,
//     "meta":     {"seed": u64, "horizon_ms": i64},
//     "nodes":    [int, ...],
//     "links":    [{"u","v","loss_millipct","delay_ms","bandwidth_kbps"}, ...],
//     "flows":    [{"id","source","sink","max_loss_millipct","max_delay_ms",
//                   "min_throughput_kbps","duration_lo_ms","duration_hi_ms",
//                   "start_event","end_event"}, ...],
//     "temporal": [{"from","to","lb_ms","ub_ms"}, ...],
//     "clauses":  [[[a,b], ...], ...]          // user clauses, disjunctions
//   }
// null stands for an absent upper bound. The effective clause set prepends
// one start-before-end clause per flow; the effective temporal network adds
// each flow's duration window.

#ifndef CDITO_INSTANCE_HPP
#define CDITO_INSTANCE_HPP

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdito/netconfig.hpp"
#include "cdito/order.hpp"
#include "cdito/stn.hpp"

namespace cdito {

struct Instance {
  int version = 1;
  std::uint64_t seed = 0;
  std::int64_t horizon_ms = 0;
  netconfig::Network net;
  std::vector<netconfig::Flow> flows;
  std::vector<stn::TemporalConstraint> temporal;  // horizon + extra constraints
  std::vector<Clause> user_clauses;

  friend bool operator==(const Instance&, const Instance&) = default;

  int num_events() const {
    int n = 0;
    for (const auto& f : flows) n = std::max({n, f.start_event, f.end_event});
    for (const auto& c : temporal) n = std::max({n, c.from, c.to});
    for (const auto& cl : user_clauses)
      for (const auto& p : cl.disjuncts) n = std::max({n, p.before, p.after});
    return n;
  }

  // Auto-derived start-before-end clauses first, then the user clauses.
  std::vector<Clause> effective_clauses() const {
    std::vector<Clause> out;
    for (const auto& f : flows) out.push_back(Clause{{{f.start_event, f.end_event}}});
    out.insert(out.end(), user_clauses.begin(), user_clauses.end());
    return out;
  }

  stn::TemporalNetwork effective_temporal() const {
    stn::TemporalNetwork tn;
    tn.num_events = num_events();
    tn.constraints = temporal;
    for (const auto& f : flows)
      tn.constraints.push_back({f.start_event, f.end_event, f.duration_lo_ms, f.duration_hi_ms});
    return tn;
  }
};

namespace detail {

inline nlohmann::json bound_to_json(std::int64_t v) {
  if (v == stn::kNoUpperBound) return nullptr;
  return v;
}

inline std::int64_t bound_from_json(const nlohmann::json& j) {
  if (j.is_null()) return stn::kNoUpperBound;
  return j.get<std::int64_t>();
}

}  // namespace detail

inline nlohmann::json to_json(const Instance& inst) {
  nlohmann::json j;
  j["version"] = inst.version;
  j["meta"] = {{"seed", inst.seed}, {"horizon_ms", inst.horizon_ms}};
  j["nodes"] = inst.net.nodes;
  j["links"] = nlohmann::json::array();
  for (const auto& l : inst.net.links)
    j["links"].push_back({{"u", l.u},
                          {"v", l.v},
                          {"loss_millipct", l.loss_millipct},
                          {"delay_ms", l.delay_ms},
                          {"bandwidth_kbps", l.bandwidth_kbps}});
  j["flows"] = nlohmann::json::array();
  for (const auto& f : inst.flows)
    j["flows"].push_back({{"id", f.id},
                          {"source", f.source},
                          {"sink", f.sink},
                          {"max_loss_millipct", f.max_loss_millipct},
                          {"max_delay_ms", f.max_delay_ms},
                          {"min_throughput_kbps", f.min_throughput_kbps},
                          {"duration_lo_ms", f.duration_lo_ms},
                          {"duration_hi_ms", detail::bound_to_json(f.duration_hi_ms)},
                          {"start_event", f.start_event},
                          {"end_event", f.end_event}});
  j["temporal"] = nlohmann::json::array();
  for (const auto& c : inst.temporal)
    j["temporal"].push_back({{"from", c.from},
                             {"to", c.to},
                             {"lb_ms", c.lb_ms},
                             {"ub_ms", detail::bound_to_json(c.ub_ms)}});
  j["clauses"] = nlohmann::json::array();
  for (const auto& cl : inst.user_clauses) {
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& p : cl.disjuncts) jc.push_back({p.before, p.after});
    j["clauses"].push_back(jc);
  }
  return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
  try {
    Instance inst;
    inst.version = j.at("version").get<int>();
    if (inst.version != 1) throw ParseError("unsupported instance version");
    inst.seed = j.at("meta").at("seed").get<std::uint64_t>();
    inst.horizon_ms = j.at("meta").value("horizon_ms", std::int64_t{0});
    inst.net.nodes = j.at("nodes").get<std::vector<int>>();
    for (const auto& l : j.at("links"))
      inst.net.links.push_back({l.at("u").get<int>(), l.at("v").get<int>(),
                                l.at("loss_millipct").get<std::int64_t>(),
                                l.at("delay_ms").get<std::int64_t>(),
                                l.at("bandwidth_kbps").get<std::int64_t>()});
    for (const auto& f : j.at("flows")) {
      netconfig::Flow flow;
      flow.id = f.at("id").get<int>();
      flow.source = f.at("source").get<int>();
      flow.sink = f.at("sink").get<int>();
      flow.max_loss_millipct = f.at("max_loss_millipct").get<std::int64_t>();
      flow.max_delay_ms = f.at("max_delay_ms").get<std::int64_t>();
      flow.min_throughput_kbps = f.at("min_throughput_kbps").get<std::int64_t>();
      flow.duration_lo_ms = f.at("duration_lo_ms").get<std::int64_t>();
      flow.duration_hi_ms = detail::bound_from_json(f.at("duration_hi_ms"));
      flow.start_event = f.at("start_event").get<int>();
      flow.end_event = f.at("end_event").get<int>();
      if (flow.start_event < 1 || flow.end_event < 1 || flow.start_event == flow.end_event)
        throw ParseError("flow " + std::to_string(flow.id) + " has invalid event binding");
      inst.flows.push_back(flow);
    }
    for (const auto& c : j.at("temporal"))
      inst.temporal.push_back({c.at("from").get<int>(), c.at("to").get<int>(),
                               c.at("lb_ms").get<std::int64_t>(),
                               detail::bound_from_json(c.at("ub_ms"))});
    for (const auto& jc : j.at("clauses")) {
      Clause cl;
      for (const auto& jp : jc) {
        if (!jp.is_array() || jp.size() != 2) throw ParseError("clause disjunct must be [a,b]");
        cl.disjuncts.push_back({jp[0].get<int>(), jp[1].get<int>()});
      }
      inst.user_clauses.push_back(std::move(cl));
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad instance file: ") + e.what());
  }
}

inline std::string serialize(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("instance file is not valid JSON");
  return instance_from_json(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_instance(text);
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize(inst);
}

// Random scenario: a complete 16-node directed mesh (240 links) with flows
// and a sprinkling of fixed-lag constraints over a 300 s horizon. Event 1 is
// the mission start; flow k starts at event 2k and ends at 2k+1.
//
// Flow requirement tuples are redrawn until the flow has at least one
// feasible path (an unroutable flow would make every ordering fail for
// reasons no ordering search can fix), and the extra constraints are redrawn
// until the base network is consistent.
inline Instance generate(std::uint64_t seed, int num_flows) {
  if (num_flows < 1) throw UsageError("generate: need at least one flow");
  constexpr int kNodes = 16;
  constexpr std::int64_t kHorizonMs = 300000;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> link_loss(100, 300);   // 0.1..0.3 %
  std::uniform_int_distribution<std::int64_t> link_delay(100, 300);  // 0.1..0.3 s
  std::uniform_int_distribution<std::int64_t> link_bw(500, 1000);
  std::uniform_int_distribution<std::int64_t> flow_loss(100, 300);
  std::uniform_int_distribution<std::int64_t> flow_delay(100, 300);
  std::uniform_int_distribution<std::int64_t> flow_thr(600, 1000);
  std::uniform_int_distribution<std::int64_t> flow_dur(20000, 80000);
  std::uniform_int_distribution<int> node(1, kNodes);
  std::uniform_int_distribution<int> node_skip(1, kNodes - 1);

  Instance inst;
  inst.seed = seed;
  inst.horizon_ms = kHorizonMs;
  for (int i = 1; i <= kNodes; ++i) inst.net.nodes.push_back(i);
  for (int u = 1; u <= kNodes; ++u)
    for (int v = 1; v <= kNodes; ++v)
      if (u != v)
        inst.net.links.push_back({u, v, link_loss(rng), link_delay(rng), link_bw(rng)});

  for (int k = 1; k <= num_flows; ++k) {
    netconfig::Flow f;
    f.id = k;
    f.start_event = 2 * k;
    f.end_event = 2 * k + 1;
    f.duration_hi_ms = stn::kNoUpperBound;
    while (true) {
      f.source = node(rng);
      int raw = node_skip(rng);
      f.sink = raw + (raw >= f.source ? 1 : 0);
      f.max_loss_millipct = flow_loss(rng);
      f.max_delay_ms = flow_delay(rng);
      f.min_throughput_kbps = flow_thr(rng);
      try {
        netconfig::CandidateTable probe(inst.net, {f});
        break;
      } catch (const InstanceError&) {
        // requirements unroutable; draw again
      }
    }
    f.duration_lo_ms = flow_dur(rng);
    inst.flows.push_back(f);
  }

  const int n = 2 * num_flows + 1;
  for (int e = 2; e <= n; ++e) inst.temporal.push_back({1, e, 0, kHorizonMs});

  const int extra = (num_flows + 4) / 5;  // one fifth, rounded up
  std::uniform_int_distribution<int> ev(1, n);
  std::uniform_int_distribution<int> ev_skip(1, n - 1);
  std::uniform_int_distribution<std::int64_t> lag(1, 100000);  // (0, 100] s
  const std::size_t fixed_count = inst.temporal.size();
  while (true) {
    inst.temporal.resize(fixed_count);
    for (int c = 0; c < extra; ++c) {
      int a = ev(rng);
      int raw = ev_skip(rng);
      int b = raw + (raw >= a ? 1 : 0);
      std::int64_t d = lag(rng);
      inst.temporal.push_back({a, b, d, d});
    }
    if (stn::network_consistent(inst.effective_temporal())) break;
  }
  return inst;
}

}  // namespace cdito

#endif  // CDITO_INSTANCE_HPP
