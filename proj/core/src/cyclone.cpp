#include "qccd/cyclone.hpp"

#include <algorithm>
#include <stdexcept>

#include "engine.hpp"
#include "parallel.hpp"

namespace qccd {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Shuttle path from ring trap i to trap i+1: one edge, or edge-junction-edge.
struct RingHop {
  EdgeId first;
  std::optional<NodeId> junction;
  std::optional<EdgeId> second;
};

std::vector<RingHop> ring_hops(const Topology& topo) {
  const auto& traps = topo.traps();
  const std::size_t x = traps.size();
  std::vector<RingHop> hops;
  if (x < 2) return hops;
  std::optional<EdgeId> incoming;
  for (std::size_t i = 0; i < x; ++i) {
    const NodeId from = traps[i];
    const NodeId to = traps[(i + 1) % x];
    bool found = false;
    for (auto e : topo.node(from).edges) {
      if (incoming && e == *incoming) continue;
      const NodeId mid = topo.edge(e).other(from);
      if (mid == to) {
        hops.push_back({e, std::nullopt, std::nullopt});
        incoming = e;
        found = true;
        break;
      }
      if (!topo.is_trap(mid)) {
        for (auto e2 : topo.node(mid).edges) {
          if (e2 != e && topo.edge(e2).other(mid) == to) {
            hops.push_back({e, mid, e2});
            incoming = e2;
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
    if (!found) throw std::logic_error("ring topology has no path from trap " + std::to_string(i));
  }
  return hops;
}

class CycloneRun {
 public:
  CycloneRun(const CssCode& code, const CycloneConfig& cfg, Topology topo)
      : code_(code), cfg_(cfg), topo_(std::move(topo)), book_(topo_) {}

  CycloneResult run();

 private:
  using Hold = detail::Hold;

  Location trap_loc(std::size_t ring_index) const {
    return {LocationKind::Trap, topo_.traps()[ring_index]};
  }

  // Books `dur` on a resource at `at`; a late start is a stall.
  double book(std::size_t resource, double at, double dur, std::size_t actor, bool transit) {
    const std::vector<Hold> holds{{resource, 0.0, dur}};
    const auto fit = book_.fit(at, holds);
    if (fit.start > at) {
      result_.schedule.stalls.push_back({at, book_.location(*fit.binding), actor, fit.start - at});
    }
    book_.commit(fit.start, holds, actor, transit);
    return fit.start;
  }

  void emit(EventKind kind, std::vector<std::size_t> actors, Location where, double start, double dur,
            std::optional<StabilizerRef> stab = std::nullopt) {
    phase_end_ = std::max(phase_end_, start + dur);
    result_.schedule.events.push_back({kind, std::move(actors), where, std::nullopt, stab, start, dur});
  }

  void gate_phase(const std::vector<std::optional<StabilizerRef>>& role);
  void swap_phase();
  void shuttle_phase(const std::vector<RingHop>& hops);
  void measure_phase(const std::vector<std::optional<StabilizerRef>>& role);

  std::size_t occupancy(std::size_t t) const { return data_in_[t].size() + anc_in_[t].size(); }

  const CssCode& code_;
  CycloneConfig cfg_;
  Topology topo_;
  detail::ResourceBook book_;
  CycloneResult result_;
  std::vector<std::vector<std::size_t>> data_in_;   // per ring index, data ids ascending
  std::vector<std::vector<std::size_t>> anc_in_;    // per ring index, ancilla indices ascending
  std::vector<std::vector<std::size_t>> support_;   // per ancilla, current rotation
  double barrier_ = 0.0;
  double phase_end_ = 0.0;
};

void CycloneRun::gate_phase(const std::vector<std::optional<StabilizerRef>>& role) {
  const std::size_t n = code_.n();
  for (std::size_t t = 0; t < data_in_.size(); ++t) {
    const double g = gate_time(cfg_.times, occupancy(t));
    double cursor = barrier_;
    for (auto a : anc_in_[t]) {
      if (!role[a]) continue;
      const auto& supp = support_[a];
      for (auto d : data_in_[t]) {
        if (!std::binary_search(supp.begin(), supp.end(), d)) continue;
        const double start = book(book_.node(topo_.traps()[t]), cursor, g, n + a, false);
        emit(EventKind::Gate, {d, n + a}, trap_loc(t), start, g, role[a]);
        result_.executed.push_back({*role[a], d, n + a});
        cursor = start + g;
      }
    }
  }
}

void CycloneRun::swap_phase() {
  const std::size_t n = code_.n();
  const auto kind = cfg_.swap == SwapPolicy::GateSwap ? EventKind::GateSwap : EventKind::IonSwap;
  for (std::size_t t = 0; t < anc_in_.size(); ++t) {
    const double dur = swap_cost(cfg_.swap, cfg_.times, occupancy(t), std::max<std::size_t>(1, data_in_[t].size()),
                                 cfg_.ionswap_s);
    double cursor = barrier_;
    for (auto a : anc_in_[t]) {
      const double start = book(book_.node(topo_.traps()[t]), cursor, dur, n + a, false);
      emit(kind, {n + a}, trap_loc(t), start, dur);
      cursor = start + dur;
    }
  }
}

void CycloneRun::shuttle_phase(const std::vector<RingHop>& hops) {
  const std::size_t n = code_.n();
  const std::size_t x = anc_in_.size();
  const auto& tm = cfg_.times;

  // Group per source trap; passes are booked in time order (all splits, then
  // transit, then merges) so the frontier book sees them chronologically.
  struct Group {
    std::size_t from;
    std::vector<std::size_t> actors;
    double at;
  };
  std::vector<Group> groups;
  for (std::size_t t = 0; t < x; ++t) {
    if (anc_in_[t].empty()) continue;
    Group g{t, {}, barrier_};
    for (auto a : anc_in_[t]) g.actors.push_back(n + a);
    groups.push_back(std::move(g));
  }
  for (auto& g : groups) {
    g.at = book(book_.node(topo_.traps()[g.from]), g.at, tm.split, g.actors.front(), true);
    emit(EventKind::Split, g.actors, trap_loc(g.from), g.at, tm.split);
    g.at += tm.split;
  }
  for (auto& g : groups) {
    const auto& hop = hops[g.from];
    g.at = book(book_.edge(hop.first), g.at, tm.move, g.actors.front(), true);
    emit(EventKind::Move, g.actors, book_.location(book_.edge(hop.first)), g.at, tm.move);
    g.at += tm.move;
    if (hop.junction) {
      // The corner junction sits inside the shuttling zone: its far path is
      // held during the crossing rather than timed as a second move.
      const double cross = tm.junction_time(static_cast<int>(topo_.degree(*hop.junction)));
      g.at = book(book_.node(*hop.junction), g.at, cross, g.actors.front(), true);
      book(book_.edge(*hop.second), g.at, cross, g.actors.front(), true);
      emit(EventKind::JunctionCross, g.actors, {LocationKind::Junction, *hop.junction}, g.at, cross);
      g.at += cross;
    }
  }
  std::vector<std::vector<std::size_t>> moved(x);
  for (auto& g : groups) {
    const std::size_t next = (g.from + 1) % x;
    g.at = book(book_.node(topo_.traps()[next]), g.at, tm.merge, g.actors.front(), true);
    emit(EventKind::Merge, g.actors, trap_loc(next), g.at, tm.merge);
    moved[next] = anc_in_[g.from];
  }
  anc_in_ = std::move(moved);
  ++result_.shuttle_phases;
}

void CycloneRun::measure_phase(const std::vector<std::optional<StabilizerRef>>& role) {
  const std::size_t n = code_.n();
  for (std::size_t t = 0; t < anc_in_.size(); ++t) {
    double cursor = barrier_;
    for (auto a : anc_in_[t]) {
      if (!role[a]) continue;
      const double start = book(book_.node(topo_.traps()[t]), cursor, cfg_.times.measure, n + a, false);
      emit(EventKind::Measure, {n + a}, trap_loc(t), start, cfg_.times.measure, role[a]);
      cursor = start + cfg_.times.measure;
    }
  }
}

CycloneResult CycloneRun::run() {
  const std::size_t n = code_.n();
  const std::size_t x = cfg_.x;
  const auto roles = assign_rotations(code_);
  const std::size_t anc = roles.ancillas;

  data_in_ = partition_data(n, x);
  anc_in_.assign(x, {});
  for (std::size_t a = 0; a < anc; ++a) anc_in_[a % x].push_back(a);

  QubitMap map(n + anc, topo_.nodes().size());
  for (std::size_t t = 0; t < x; ++t) {
    for (auto d : data_in_[t]) map.place(d, topo_.traps()[t]);
    for (auto a : anc_in_[t]) map.place(n + a, topo_.traps()[t]);
  }
  validate_map(map, topo_);
  result_.schedule.initial_map = map;

  const auto hops = ring_hops(topo_);
  for (const auto* role : {&roles.x_phase, &roles.z_phase}) {
    support_.assign(anc, {});
    for (std::size_t a = 0; a < anc; ++a) {
      if (!(*role)[a]) continue;
      const auto& s = *(*role)[a];
      support_[a] = (s.kind == PauliKind::X ? code_.hx() : code_.hz()).row_support(s.index);
    }
    for (std::size_t step = 0; step < x; ++step) {
      gate_phase(*role);
      barrier_ = phase_end_;
      if (x > 1) {
        swap_phase();
        barrier_ = phase_end_;
        shuttle_phase(hops);
        barrier_ = phase_end_;
      }
    }
    measure_phase(*role);
    barrier_ = phase_end_;
  }

  auto& events = result_.schedule.events;
  std::stable_sort(events.begin(), events.end(),
                   [](const ShuttleEvent& a, const ShuttleEvent& b) { return a.start < b.start; });
  result_.schedule.stats = compute_stats(events, result_.schedule.stalls);
  result_.topology = std::move(topo_);
  return std::move(result_);
}

}  // namespace

std::vector<std::vector<std::size_t>> partition_data(std::size_t n, std::size_t x) {
  if (x < 1) throw std::invalid_argument("partition_data: x must be >= 1");
  std::vector<std::vector<std::size_t>> out(x);
  for (std::size_t d = 0; d < n; ++d) out[d % x].push_back(d);
  return out;
}

RotationAssignment assign_rotations(const CssCode& code) {
  RotationAssignment r;
  r.ancillas = std::max(code.m_x(), code.m_z());
  r.x_phase.resize(r.ancillas);
  r.z_phase.resize(r.ancillas);
  for (std::size_t i = 0; i < code.m_x(); ++i) r.x_phase[i] = StabilizerRef{PauliKind::X, i};
  for (std::size_t i = 0; i < code.m_z(); ++i) r.z_phase[i] = StabilizerRef{PauliKind::Z, i};
  return r;
}

std::size_t cyclone_min_capacity(const CssCode& code, std::size_t x) {
  if (x < 1) throw std::invalid_argument("cyclone: x must be >= 1");
  return ceil_div(code.n(), x) + ceil_div(std::max(code.m_x(), code.m_z()), x);
}

std::size_t tight_capacity(std::size_t n, std::size_t m, std::size_t x) {
  if (x < 1) throw std::invalid_argument("tight_capacity: x must be >= 1");
  return ceil_div(n, x) + ceil_div(m, x);
}

double cyclone_shuttle_time(const OpTimes& times) {
  return times.split + times.move + times.junction_time(2) + times.merge;
}

CycloneResult cyclone_compile(const CssCode& code, const CycloneConfig& cfg) {
  if (cfg.x < 1) throw std::invalid_argument("cyclone_compile: x must be >= 1");
  validate(cfg.times);
  const std::size_t need = cyclone_min_capacity(code, cfg.x);
  if (cfg.capacity < need) {
    throw std::invalid_argument("cyclone_compile: capacity " + std::to_string(cfg.capacity) + " < required " +
                                std::to_string(need) + " for x = " + std::to_string(cfg.x));
  }
  return CycloneRun(code, cfg, build_ring(cfg.x, cfg.capacity)).run();
}

double cyclone_bound(const CssCode& code, const CycloneConfig& cfg) {
  const std::size_t x = cfg.x;
  if (x < 1) throw std::invalid_argument("cyclone_bound: x must be >= 1");
  const double a = static_cast<double>(ceil_div(std::max(code.m_x(), code.m_z()), x));
  const std::size_t d = ceil_div(code.n(), x);
  const double g = gate_time(cfg.times, cfg.capacity);
  const double t = swap_cost(cfg.swap, cfg.times, cfg.capacity, std::max<std::size_t>(1, d), cfg.ionswap_s);
  const double s = cyclone_shuttle_time(cfg.times);
  return 2.0 * static_cast<double>(x) * (s + a * (t + g * static_cast<double>(d))) + 2.0 * a * cfg.times.measure;
}

double cyclone_bound_literal(const CssCode& code, const CycloneConfig& cfg) {
  const std::size_t x = cfg.x;
  const std::size_t m = code.m();
  if (x < 1 || m == 0) throw std::invalid_argument("cyclone_bound_literal: need x >= 1 and m >= 1");
  const double per_trap = static_cast<double>(ceil_div(m, x));
  const double gates = static_cast<double>(ceil_div(x * code.n(), m));
  const double g = gate_time(cfg.times, cfg.capacity);
  const double t = swap_cost(cfg.swap, cfg.times, cfg.capacity, std::max<std::size_t>(1, ceil_div(code.n(), x)),
                             cfg.ionswap_s);
  const double s = cyclone_shuttle_time(cfg.times);
  return 2.0 * static_cast<double>(x) * (s + per_trap * (t + g * gates));
}

double spacetime_cost(const ExecStats& stats, std::size_t traps, std::size_t ancillas) {
  return static_cast<double>(traps) * stats.total_time * static_cast<double>(ancillas);
}

std::vector<TrapSweepRow> sweep_traps(const CssCode& code, const std::vector<std::size_t>& xs, bool tight,
                                      std::size_t capacity, const CycloneConfig& base, unsigned jobs) {
  if (xs.empty()) throw std::invalid_argument("sweep_traps: empty x list");
  const std::size_t ancillas = std::max(code.m_x(), code.m_z());
  auto rows = detail::parallel_map(xs.size(), jobs, [&](std::size_t i) {
    TrapSweepRow row;
    row.x = xs[i];
    try {
      CycloneConfig cfg = base;
      cfg.x = xs[i];
      cfg.capacity = tight ? tight_capacity(code.n(), code.m(), cfg.x) : capacity;
      row.capacity = cfg.capacity;
      const auto res = cyclone_compile(code, cfg);
      row.total_us = res.schedule.stats.total_time;
      row.bound_us = cyclone_bound(code, cfg);
      row.spacetime = spacetime_cost(res.schedule.stats, cfg.x, ancillas);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  });
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return rows;
}

std::string trap_sweep_csv_header() { return "x,capacity,total_us,bound_us,spacetime"; }

std::string trap_sweep_csv_row(const TrapSweepRow& row) {
  using detail::format_double;
  if (!row.error.empty()) return std::to_string(row.x) + "," + std::to_string(row.capacity) + ",error,error,error";
  return std::to_string(row.x) + "," + std::to_string(row.capacity) + "," + format_double(row.total_us) + "," +
         format_double(row.bound_us) + "," + format_double(row.spacetime);
}

}  // namespace qccd
