#include "engine.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace qccd {

namespace detail {

ResourceBook::ResourceBook(const Topology& topo)
    : topo_(&topo), node_count_(topo.nodes().size()), slots_(topo.nodes().size() + topo.edges().size()) {}

Location ResourceBook::location(std::size_t resource) const {
  if (resource >= node_count_) return {LocationKind::Edge, resource - node_count_};
  return {topo_->is_trap(resource) ? LocationKind::Trap : LocationKind::Junction, resource};
}

Fit ResourceBook::fit(double ready, const std::vector<Hold>& holds) const {
  Fit out{ready, std::nullopt};
  for (const auto& h : holds) {
    const double candidate = slots_.at(h.resource).free_at - h.enter;
    if (candidate > out.start || (candidate == out.start && out.binding && h.resource < *out.binding)) {
      out.start = candidate;
      out.binding = h.resource;
    }
  }
  return out;
}

void ResourceBook::commit(double start, const std::vector<Hold>& holds, std::size_t actor, bool transit) {
  for (const auto& h : holds) {
    auto& slot = slots_.at(h.resource);
    slot.free_at = std::max(slot.free_at, start + h.exit);
    slot.holder = actor;
    slot.transit = transit;
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

QubitMap::QubitMap(std::size_t qubit_count, std::size_t node_count)
    : chains_(node_count), trap_(qubit_count, kUnplaced) {}

void QubitMap::place(std::size_t q, NodeId trap) {
  if (q >= trap_.size()) throw std::out_of_range("QubitMap::place: qubit id out of range");
  if (trap >= chains_.size()) throw std::out_of_range("QubitMap::place: node id out of range");
  if (trap_[q] != kUnplaced) throw std::invalid_argument("QubitMap::place: qubit already placed");
  trap_[q] = trap;
  chains_[trap].push_back(q);
}

NodeId QubitMap::trap_of(std::size_t q) const {
  const NodeId t = trap_.at(q);
  if (t == kUnplaced) throw std::invalid_argument("QubitMap: qubit " + std::to_string(q) + " is not placed");
  return t;
}

std::size_t QubitMap::slot_of(std::size_t q) const {
  const auto& c = chains_.at(trap_of(q));
  return static_cast<std::size_t>(std::find(c.begin(), c.end(), q) - c.begin());
}

void validate_map(const QubitMap& map, const Topology& topo) {
  if (map.chains().size() != topo.nodes().size()) {
    throw std::invalid_argument("QubitMap does not match the topology's node count");
  }
  for (std::size_t q = 0; q < map.qubit_count(); ++q) {
    if (!map.placed(q)) throw std::invalid_argument("qubit " + std::to_string(q) + " is not placed");
  }
  for (NodeId n = 0; n < topo.nodes().size(); ++n) {
    const auto& chain = map.chain(n);
    if (chain.empty()) continue;
    if (!topo.is_trap(n)) throw std::invalid_argument("qubits placed on junction " + std::to_string(n));
    if (chain.size() > topo.node(n).capacity) {
      throw std::invalid_argument("trap " + std::to_string(n) + " over capacity in initial map");
    }
  }
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Split: return "Split";
    case EventKind::Move: return "Move";
    case EventKind::Merge: return "Merge";
    case EventKind::JunctionCross: return "JunctionCross";
    case EventKind::GateSwap: return "GateSwap";
    case EventKind::IonSwap: return "IonSwap";
    case EventKind::Rebalance: return "Rebalance";
    case EventKind::Gate: return "Gate";
    case EventKind::Measure: return "Measure";
  }
  return "Gate";
}

std::string to_string(LocationKind k) {
  switch (k) {
    case LocationKind::Trap: return "trap";
    case LocationKind::Junction: return "junction";
    case LocationKind::Edge: return "edge";
  }
  return "trap";
}

std::string to_string(SwapPolicy p) { return p == SwapPolicy::GateSwap ? "gate" : "ion"; }

SwapPolicy parse_swap_policy(const std::string& text) {
  if (text == "gate" || text == "GateSwap") return SwapPolicy::GateSwap;
  if (text == "ion" || text == "IonSwap") return SwapPolicy::IonSwap;
  throw std::invalid_argument("unknown swap policy '" + text + "'");
}

double swap_cost(SwapPolicy policy, const OpTimes& times, std::size_t chain_len, std::size_t d_l,
                 std::optional<double> ionswap_s) {
  if (policy == SwapPolicy::GateSwap) return 3.0 * gate_time(times, chain_len);
  if (d_l < 1) throw std::invalid_argument("swap_cost: IonSwap needs d_l >= 1");
  const double s = ionswap_s.value_or(times.split);
  return s * static_cast<double>(d_l) + s * static_cast<double>(d_l - 1) + times.swap_const;
}

double ExecStats::component(EventKind k) const {
  const auto it = component_times.find(k);
  return it == component_times.end() ? 0.0 : it->second;
}

double ExecStats::component_sum() const {
  double sum = 0.0;
  for (const auto& [k, v] : component_times) sum += v;
  return sum;
}

ExecStats compute_stats(const std::vector<ShuttleEvent>& events, const std::vector<Stall>& stalls) {
  ExecStats s;
  for (const auto& e : events) {
    s.total_time = std::max(s.total_time, e.end());
    s.component_times[e.kind] += e.duration;
    if (e.kind == EventKind::Rebalance) ++s.rebalance_count;
  }
  s.event_count = events.size();
  for (const auto& st : stalls) {
    ++s.roadblock_count;
    s.roadblock_time += st.stall;
  }
  const double sum = s.component_sum();
  s.parallel_fraction = sum > 0.0 ? s.total_time / sum : 1.0;
  return s;
}

RoadblockReport detect_roadblocks(const CompiledSchedule& cs) {
  RoadblockReport r;
  r.stalls = cs.stalls;
  r.count = cs.stalls.size();
  for (const auto& s : cs.stalls) r.total += s.stall;
  return r;
}

namespace {

constexpr std::size_t kTransit = static_cast<std::size_t>(-1);

std::string describe(const ShuttleEvent& e, std::size_t index) {
  return "event " + std::to_string(index) + " (" + to_string(e.kind) + " @ " + to_string(e.location.kind) + " " +
         std::to_string(e.location.id) + ", t=" + detail::format_double(e.start) + ")";
}

void audit_exclusive(const std::vector<std::pair<double, double>>& intervals, const std::string& what,
                     std::vector<std::string>& out) {
  auto sorted = intervals;
  std::sort(sorted.begin(), sorted.end());
  double busy_until = -1.0;
  for (const auto& [s, e] : sorted) {
    if (s < busy_until - 1e-9) {
      out.push_back("overlap on " + what + " at t=" + detail::format_double(s));
      return;
    }
    busy_until = std::max(busy_until, e);
  }
}

}  // namespace

ReplayReport replay(const CompiledSchedule& cs, const Topology& topo) {
  ReplayReport rep;
  const auto& map = cs.initial_map;
  std::vector<std::size_t> where(map.qubit_count(), kTransit);
  for (std::size_t q = 0; q < map.qubit_count(); ++q) {
    if (map.placed(q)) where[q] = map.trap_of(q);
  }

  auto check_at = [&](const ShuttleEvent& e, std::size_t i, std::size_t expected) {
    for (auto a : e.actors) {
      if (a >= where.size()) {
        rep.violations.push_back(describe(e, i) + ": unknown ion " + std::to_string(a));
      } else if (where[a] != expected) {
        rep.violations.push_back(describe(e, i) + ": ion " + std::to_string(a) + " is not where the event needs it");
      }
    }
  };

  std::vector<std::vector<std::pair<double, double>>> trap_busy(topo.nodes().size());
  std::vector<std::vector<std::pair<double, double>>> junction_busy(topo.nodes().size());
  std::vector<std::vector<std::pair<double, double>>> edge_busy(topo.edges().size());
  // (time, delta, trap); decrements sort first at equal times.
  std::vector<std::tuple<double, long, NodeId>> occupancy_changes;

  double last_start = -1.0;
  for (std::size_t i = 0; i < cs.events.size(); ++i) {
    const auto& e = cs.events[i];
    rep.total_time = std::max(rep.total_time, e.end());
    rep.component_times[e.kind] += e.duration;
    if (e.start < last_start) rep.violations.push_back(describe(e, i) + ": trace not sorted by start");
    last_start = e.start;
    if (e.duration < 0.0) rep.violations.push_back(describe(e, i) + ": negative duration");

    const std::size_t loc = e.location.id;
    const bool on_trap = e.location.kind == LocationKind::Trap;
    if (on_trap && (loc >= topo.nodes().size() || !topo.is_trap(loc))) {
      rep.violations.push_back(describe(e, i) + ": location is not a trap");
      continue;
    }
    const auto k = static_cast<long>(e.actors.size());
    switch (e.kind) {
      case EventKind::Split:
        check_at(e, i, loc);
        for (auto a : e.actors) where[a] = kTransit;
        occupancy_changes.emplace_back(e.end(), -k, loc);
        trap_busy[loc].emplace_back(e.start, e.end());
        break;
      case EventKind::Merge:
        check_at(e, i, kTransit);
        for (auto a : e.actors) where[a] = loc;
        occupancy_changes.emplace_back(e.start, k, loc);
        trap_busy[loc].emplace_back(e.start, e.end());
        break;
      case EventKind::Move:
        check_at(e, i, kTransit);
        if (e.location.kind != LocationKind::Edge || loc >= topo.edges().size()) {
          rep.violations.push_back(describe(e, i) + ": Move outside a shuttle path");
        } else {
          edge_busy[loc].emplace_back(e.start, e.end());
        }
        break;
      case EventKind::JunctionCross:
        check_at(e, i, kTransit);
        if (e.location.kind != LocationKind::Junction || loc >= topo.nodes().size() || topo.is_trap(loc)) {
          rep.violations.push_back(describe(e, i) + ": crossing outside a junction");
        } else {
          junction_busy[loc].emplace_back(e.start, e.end());
        }
        break;
      case EventKind::Gate:
      case EventKind::GateSwap:
      case EventKind::IonSwap:
      case EventKind::Measure:
        if (!on_trap) {
          rep.violations.push_back(describe(e, i) + ": trap operation outside a trap");
          break;
        }
        check_at(e, i, loc);
        trap_busy[loc].emplace_back(e.start, e.end());
        break;
      case EventKind::Rebalance: {
        if (!on_trap || !e.target || e.target->kind != LocationKind::Trap || e.target->id >= topo.nodes().size() ||
            !topo.is_trap(e.target->id)) {
          rep.violations.push_back(describe(e, i) + ": rebalance needs trap source and target");
          break;
        }
        check_at(e, i, loc);
        for (auto a : e.actors) where[a] = e.target->id;
        occupancy_changes.emplace_back(e.end(), -k, loc);
        occupancy_changes.emplace_back(e.end(), k, e.target->id);
        break;
      }
    }
  }

  for (NodeId n = 0; n < topo.nodes().size(); ++n) {
    audit_exclusive(trap_busy[n], "trap " + std::to_string(n), rep.violations);
    audit_exclusive(junction_busy[n], "junction " + std::to_string(n), rep.violations);
  }
  for (EdgeId e = 0; e < topo.edges().size(); ++e) {
    audit_exclusive(edge_busy[e], "path " + std::to_string(e), rep.violations);
  }

  std::vector<long> occupancy(topo.nodes().size(), 0);
  for (NodeId n = 0; n < topo.nodes().size() && n < map.chains().size(); ++n) {
    occupancy[n] = static_cast<long>(map.chain(n).size());
  }
  std::stable_sort(occupancy_changes.begin(), occupancy_changes.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  for (const auto& [t, delta, trap] : occupancy_changes) {
    occupancy[trap] += delta;
    if (occupancy[trap] > static_cast<long>(topo.node(trap).capacity)) {
      rep.violations.push_back("trap " + std::to_string(trap) + " over capacity at t=" + detail::format_double(t));
    }
    if (occupancy[trap] < 0) {
      rep.violations.push_back("trap " + std::to_string(trap) + " negative occupancy at t=" + detail::format_double(t));
    }
  }
  return rep;
}

void write_trace_jsonl(const CompiledSchedule& cs, std::ostream& out) {
  auto loc_json = [](const Location& l) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(l.kind);
    j["id"] = l.id;
    return j;
  };
  for (const auto& e : cs.events) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(e.kind);
    j["actors"] = e.actors;
    j["location"] = loc_json(e.location);
    j["target"] = e.target ? loc_json(*e.target) : nlohmann::ordered_json(nullptr);
    j["stabilizer"] = e.stabilizer ? nlohmann::ordered_json(to_string(*e.stabilizer)) : nlohmann::ordered_json(nullptr);
    j["start"] = e.start;
    j["duration"] = e.duration;
    out << j.dump() << '\n';
  }
}

std::string stats_csv_header() { return "code,layout,mode,total_us,gate_us,shuttle_us,swap_us,measure_us,stalls,parallel_fraction"; }

std::string stats_csv_row(const std::string& code, const std::string& layout, const std::string& mode,
                          const ExecStats& s) {
  using detail::format_double;
  const double shuttle = s.component(EventKind::Split) + s.component(EventKind::Move) +
                         s.component(EventKind::Merge) + s.component(EventKind::JunctionCross) +
                         s.component(EventKind::Rebalance);
  const double swaps = s.component(EventKind::GateSwap) + s.component(EventKind::IonSwap);
  return code + "," + layout + "," + mode + "," + format_double(s.total_time) + "," +
         format_double(s.component(EventKind::Gate)) + "," + format_double(shuttle) + "," + format_double(swaps) +
         "," + format_double(s.component(EventKind::Measure)) + "," + std::to_string(s.roadblock_count) + "," +
         format_double(s.parallel_fraction);
}

}  // namespace qccd
