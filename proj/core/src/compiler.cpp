#include "qccd/compiler.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "engine.hpp"

namespace qccd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct PathStep {
  EdgeId edge;
  NodeId node;  // node entered through `edge`
};

// One gate of the flattened schedule; id is its position.
struct GateRef {
  std::size_t id;
  GateOp op;
};

class Compiler {
  using Hold = detail::Hold;

 public:
  Compiler(const Topology& topo, const QubitMap& map, const CompileOptions& opts)
      : topo_(topo), opts_(opts), book_(topo), chains_(map.chains()), where_(map.qubit_count()),
        ready_(map.qubit_count(), 0.0), last_used_(map.qubit_count(), -1.0) {
    validate(opts_.times);
    validate_map(map, topo);
    for (std::size_t q = 0; q < map.qubit_count(); ++q) where_[q] = map.trap_of(q);
    result_.initial_map = map;
  }

  void dispatch(const GateRef& g, double floor);
  void measure_epilogue(const std::vector<GateRef>& gates);
  double makespan() const noexcept { return makespan_; }
  double qubit_ready(std::size_t q) const { return ready_.at(q); }

  // Lower bound on when a gate can begin: both qubits idle and both traps free.
  double earliest_start(const GateOp& op) const {
    return std::max({ready_.at(op.ancilla), ready_.at(op.data_qubit), book_.free_at(book_.node(where_[op.ancilla])),
                     book_.free_at(book_.node(where_[op.data_qubit]))});
  }

  CompiledSchedule finish() {
    std::stable_sort(result_.events.begin(), result_.events.end(),
                     [](const ShuttleEvent& a, const ShuttleEvent& b) { return a.start < b.start; });
    result_.stats = compute_stats(result_.events, result_.stalls);
    return std::move(result_);
  }

 private:
  struct Planned {
    EventKind kind;
    Location location;
    double offset;
    double duration;
  };

  void check_qubit(std::size_t q) const {
    if (q >= where_.size()) throw std::out_of_range("schedule references qubit " + std::to_string(q) + " outside the map");
  }

  bool front_end(NodeId trap, EdgeId e) const { return topo_.node(trap).edges.front() == e; }

  Location loc(NodeId n) const { return book_.location(book_.node(n)); }

  // Moves q to the chosen end of `trap`'s chain; returns the swap duration (0 if none).
  double swap_to_end(NodeId trap, std::size_t q, bool front, std::vector<Planned>& plan, double offset) {
    auto& chain = chains_[trap];
    const auto pos = static_cast<std::size_t>(std::find(chain.begin(), chain.end(), q) - chain.begin());
    const std::size_t end = front ? 0 : chain.size() - 1;
    if (pos == end) return 0.0;
    const std::size_t d_l = pos > end ? pos - end : end - pos;
    const double dur = swap_cost(opts_.swap, opts_.times, chain.size(), d_l, opts_.ionswap_s);
    plan.push_back({opts_.swap == SwapPolicy::GateSwap ? EventKind::GateSwap : EventKind::IonSwap, loc(trap), offset, dur});
    if (opts_.swap == SwapPolicy::GateSwap) {
      std::swap(chain[pos], chain[end]);
    } else {
      chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(pos));
      if (front) chain.insert(chain.begin(), q);
      else chain.push_back(q);
    }
    return dur;
  }

  void remove_from(NodeId trap, std::size_t q) {
    auto& chain = chains_[trap];
    chain.erase(std::find(chain.begin(), chain.end(), q));
  }

  void insert_at(NodeId trap, std::size_t q, bool front) {
    auto& chain = chains_[trap];
    if (front) chain.insert(chain.begin(), q);
    else chain.push_back(q);
    where_[q] = trap;
  }

  double pass_through_estimate(NodeId trap) const {
    const auto len = chains_[trap].size();
    double swap = 0.0;
    if (len > 0) swap = swap_cost(opts_.swap, opts_.times, len + 1, len, opts_.ionswap_s);
    return opts_.times.merge + swap + opts_.times.split;
  }

  // Fastest path from `from` to trap `to`; intermediate traps need a free slot
  // unless `ignore_capacity` is set.
  std::vector<PathStep> route(NodeId from, NodeId to, bool ignore_capacity = false) const;
  // Traps reachable from `from` through junctions and non-full traps, with path costs.
  std::vector<std::pair<NodeId, double>> reachable_traps(NodeId from, std::vector<EdgeId>& prev_edge) const;

  void emit(const std::vector<Planned>& plan, double start, std::vector<std::size_t> actors,
            std::optional<StabilizerRef> stab = std::nullopt, std::optional<Location> target = std::nullopt) {
    for (const auto& p : plan) {
      ShuttleEvent e{p.kind, actors, p.location, target, stab, start + p.offset, p.duration};
      makespan_ = std::max(makespan_, e.end());
      result_.events.push_back(std::move(e));
    }
  }

  // Fits and commits `holds`; records a roadblock stall when the binding
  // resource is part of someone else's transit or is a corridor resource.
  double place(double ready, const std::vector<Hold>& holds, std::size_t actor, bool transit,
               const std::vector<std::size_t>& endpoints) {
    const auto fit = book_.fit(ready, holds);
    if (fit.start > ready && fit.binding) {
      const auto r = *fit.binding;
      const bool endpoint = std::find(endpoints.begin(), endpoints.end(), r) != endpoints.end();
      const auto holder = book_.last_holder(r);
      const bool foreign_transit = book_.last_was_transit(r) && holder && *holder != actor;
      if (!endpoint || foreign_transit) {
        result_.stalls.push_back({ready, book_.location(r), actor, fit.start - ready});
      }
    }
    book_.commit(fit.start, holds, actor, transit);
    return fit.start;
  }

  void rebalance(NodeId trap, const GateRef& g);
  void shuttle(std::size_t q, NodeId to, const GateRef& g, double floor);

  const Topology& topo_;
  CompileOptions opts_;
  detail::ResourceBook book_;
  std::vector<std::vector<std::size_t>> chains_;
  std::vector<NodeId> where_;
  std::vector<double> ready_;
  std::vector<double> last_used_;
  double makespan_ = 0.0;
  CompiledSchedule result_;
};

std::vector<PathStep> Compiler::route(NodeId from, NodeId to, bool ignore_capacity) const {
  const auto& nodes = topo_.nodes();
  std::vector<double> dist(nodes.size(), kInf);
  std::vector<EdgeId> prev(nodes.size(), kNone);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[from] = 0.0;
  pq.push({0.0, from});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == to) break;
    if (!ignore_capacity && u != from && topo_.is_trap(u)) {
      if (chains_[u].size() >= nodes[u].capacity) continue;
    }
    for (auto e : nodes[u].edges) {
      const NodeId v = topo_.edge(e).other(u);
      double enter = opts_.times.move;
      if (!topo_.is_trap(v)) enter += opts_.times.junction_time(static_cast<int>(topo_.degree(v)));
      else enter += v == to ? opts_.times.merge : pass_through_estimate(v);
      if (u == from) enter += opts_.times.split;
      if (d + enter < dist[v]) {
        dist[v] = d + enter;
        prev[v] = e;
        pq.push({dist[v], v});
      }
    }
  }
  if (dist[to] == kInf) return {};
  std::vector<PathStep> path;
  for (NodeId v = to; v != from;) {
    const EdgeId e = prev[v];
    path.push_back({e, v});
    v = topo_.edge(e).other(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::pair<NodeId, double>> Compiler::reachable_traps(NodeId from, std::vector<EdgeId>& prev) const {
  const auto& nodes = topo_.nodes();
  std::vector<double> dist(nodes.size(), kInf);
  prev.assign(nodes.size(), kNone);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[from] = 0.0;
  pq.push({0.0, from});
  std::vector<std::pair<NodeId, double>> out;
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u != from && topo_.is_trap(u)) {
      out.emplace_back(u, d);
      if (chains_[u].size() >= nodes[u].capacity) continue;
    }
    for (auto e : nodes[u].edges) {
      const NodeId v = topo_.edge(e).other(u);
      double enter = opts_.times.move;
      enter += topo_.is_trap(v) ? opts_.times.merge : opts_.times.junction_time(static_cast<int>(topo_.degree(v)));
      if (u == from) enter += opts_.times.split;
      else if (topo_.is_trap(u)) enter += pass_through_estimate(u) - opts_.times.merge;
      if (d + enter < dist[v]) {
        dist[v] = d + enter;
        prev[v] = e;
        pq.push({dist[v], v});
      }
    }
  }
  return out;
}

void Compiler::rebalance(NodeId trap, const GateRef& g) {
  const auto& chain = chains_[trap];
  std::size_t victim = kNone;
  for (auto q : chain) {
    if (q == g.op.data_qubit || q == g.op.ancilla) continue;
    if (victim == kNone || last_used_[q] < last_used_[victim] ||
        (last_used_[q] == last_used_[victim] && q < victim)) {
      victim = q;
    }
  }
  std::vector<EdgeId> prev;
  NodeId best = kNone;
  double best_cost = kInf;
  std::size_t best_room = 0;
  if (victim != kNone) {
    for (const auto& [t, cost] : reachable_traps(trap, prev)) {
      const auto cap = topo_.node(t).capacity;
      if (chains_[t].size() >= cap) continue;
      const std::size_t room = cap - chains_[t].size();
      if (room > best_room || (room == best_room && (cost < best_cost || (cost == best_cost && t < best)))) {
        best = t;
        best_cost = cost;
        best_room = room;
      }
    }
  }
  if (best == kNone) {
    throw std::runtime_error("capacity deadlock at gate " + std::to_string(g.id) + " (" + to_string(g.op.stabilizer) +
                             ", data " + std::to_string(g.op.data_qubit) + "): trap " + std::to_string(trap) +
                             (victim == kNone ? " is full and holds only the gate's qubits"
                                              : " is full and no reachable trap has a free slot"));
  }

  std::vector<PathStep> path;
  for (NodeId v = best; v != trap;) {
    const EdgeId e = prev[v];
    path.push_back({e, v});
    v = topo_.edge(e).other(v);
  }
  std::reverse(path.begin(), path.end());

  const auto& t = opts_.times;
  std::vector<Hold> holds;
  double offset = t.split;
  for (const auto& step : path) {
    holds.push_back({book_.edge(step.edge), offset, offset + t.move});
    offset += t.move;
    if (step.node == best) break;
    const double stay = topo_.is_trap(step.node) ? pass_through_estimate(step.node)
                                                 : t.junction_time(static_cast<int>(topo_.degree(step.node)));
    holds.push_back({book_.node(step.node), offset, offset + stay});
    offset += stay;
  }
  holds.push_back({book_.node(best), offset, offset + t.merge});
  offset += t.merge;
  holds.push_back({book_.node(trap), 0.0, offset});

  const double start = place(ready_[victim], holds, victim, true, {book_.node(trap), book_.node(best)});
  remove_from(trap, victim);
  insert_at(best, victim, front_end(best, path.back().edge));
  const std::vector<Planned> plan{{EventKind::Rebalance, loc(trap), 0.0, offset}};
  emit(plan, start, {victim}, std::nullopt, loc(best));
  ready_[victim] = start + offset;
}

void Compiler::shuttle(std::size_t q, NodeId to, const GateRef& g, double floor) {
  const NodeId from = where_[q];
  const auto path = route(from, to);
  if (path.empty()) {
    throw std::runtime_error("unroutable gate " + std::to_string(g.id) + " (" + to_string(g.op.stabilizer) + ", data " +
                             std::to_string(g.op.data_qubit) + "): no path from trap " + std::to_string(from) +
                             " to trap " + std::to_string(to));
  }
  const auto& t = opts_.times;
  std::vector<Planned> plan;
  std::vector<Hold> holds;

  double offset = swap_to_end(from, q, front_end(from, path.front().edge), plan, 0.0);
  plan.push_back({EventKind::Split, loc(from), offset, t.split});
  offset += t.split;
  holds.push_back({book_.node(from), 0.0, offset});
  remove_from(from, q);

  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& step = path[i];
    plan.push_back({EventKind::Move, book_.location(book_.edge(step.edge)), offset, t.move});
    holds.push_back({book_.edge(step.edge), offset, offset + t.move});
    offset += t.move;
    const NodeId v = step.node;
    const double enter = offset;
    if (!topo_.is_trap(v)) {
      const double cross = t.junction_time(static_cast<int>(topo_.degree(v)));
      plan.push_back({EventKind::JunctionCross, loc(v), offset, cross});
      offset += cross;
    } else if (v == to) {
      plan.push_back({EventKind::Merge, loc(v), offset, t.merge});
      offset += t.merge;
      insert_at(v, q, front_end(v, step.edge));
    } else {
      plan.push_back({EventKind::Merge, loc(v), offset, t.merge});
      offset += t.merge;
      insert_at(v, q, front_end(v, step.edge));
      offset += swap_to_end(v, q, front_end(v, path[i + 1].edge), plan, offset);
      plan.push_back({EventKind::Split, loc(v), offset, t.split});
      offset += t.split;
      remove_from(v, q);
    }
    holds.push_back({book_.node(v), enter, offset});
  }

  const double start = place(std::max(floor, ready_[q]), holds, q, true, {book_.node(from), book_.node(to)});
  emit(plan, start, {q});
  ready_[q] = start + offset;
}

void Compiler::dispatch(const GateRef& g, double floor) {
  const std::size_t a = g.op.ancilla;
  const std::size_t d = g.op.data_qubit;
  check_qubit(a);
  check_qubit(d);
  if (where_[a] != where_[d]) {
    const NodeId target = where_[d];
    std::size_t rebalances = 0;
    std::size_t budget = opts_.rebalance_budget;
    auto make_room = [&](NodeId trap) {
      while (chains_[trap].size() >= topo_.node(trap).capacity) {
        if (++rebalances > budget) {
          throw std::runtime_error("capacity deadlock at gate " + std::to_string(g.id) + ": rebalance budget exhausted");
        }
        rebalance(trap, g);
      }
    };
    make_room(target);
    // Full pass-through traps block every route: clear them along the capacity-blind path.
    if (route(where_[a], target).empty()) budget += opts_.rebalance_budget * route(where_[a], target, true).size();
    while (route(where_[a], target).empty()) {
      const auto blind = route(where_[a], target, true);
      const auto full = std::find_if(blind.begin(), blind.end(), [&](const PathStep& step) {
        return step.node != target && topo_.is_trap(step.node) &&
               chains_[step.node].size() >= topo_.node(step.node).capacity;
      });
      if (full == blind.end()) break;
      make_room(full->node);
    }
    shuttle(a, target, g, floor);
  }
  const NodeId trap = where_[d];
  const double dur = gate_time(opts_.times, chains_[trap].size());
  const std::vector<Hold> holds{{book_.node(trap), 0.0, dur}};
  const double ready = std::max({floor, ready_[a], ready_[d]});
  const double start = place(ready, holds, a, false, {book_.node(trap)});
  emit({{EventKind::Gate, loc(trap), 0.0, dur}}, start, {d, a}, g.op.stabilizer);
  ready_[a] = ready_[d] = start + dur;
  last_used_[a] = last_used_[d] = start + dur;
}

void Compiler::measure_epilogue(const std::vector<GateRef>& gates) {
  std::vector<std::optional<StabilizerRef>> stab_of(where_.size());
  for (const auto& g : gates) stab_of[g.op.ancilla] = g.op.stabilizer;
  for (std::size_t q = 0; q < stab_of.size(); ++q) {
    if (!stab_of[q]) continue;
    const NodeId trap = where_[q];
    const double dur = opts_.times.measure;
    const double start = place(ready_[q], {{book_.node(trap), 0.0, dur}}, q, false, {book_.node(trap)});
    emit({{EventKind::Measure, loc(trap), 0.0, dur}}, start, {q}, stab_of[q]);
    ready_[q] = start + dur;
  }
}

std::vector<GateRef> flatten(const SyndromeSchedule& sched) {
  std::vector<GateRef> out;
  out.reserve(sched.gate_count());
  for (const auto& slice : sched.slices) {
    for (const auto& op : slice) out.push_back({out.size(), op});
  }
  return out;
}

}  // namespace

QubitMap map_greedy_cluster(const CssCode& code, const Topology& topo) {
  const std::size_t total = code.n() + code.m();
  const auto& traps = topo.traps();
  std::size_t room = 0;
  std::size_t room_spare = 0;
  for (auto t : traps) {
    room += topo.node(t).capacity;
    room_spare += topo.node(t).capacity > 0 ? topo.node(t).capacity - 1 : 0;
  }
  if (total > room) {
    throw std::runtime_error("insufficient capacity: " + std::to_string(total) + " qubits, " + std::to_string(room) +
                             " trap slots");
  }
  const bool keep_spare = total <= room_spare;

  std::vector<std::vector<std::size_t>> adj(total);
  for (const auto& s : stabilizers_of(code)) {
    const std::size_t anc = code.n() + stabilizer_ordinal(code, s.kind, s.index);
    for (auto d : s.support) {
      adj[d].push_back(anc);
      adj[anc].push_back(d);
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<std::size_t> order;
  order.reserve(total);
  std::vector<char> seen(total, 0);
  for (std::size_t root = 0; root < total; ++root) {
    if (seen[root]) continue;
    std::queue<std::size_t> q;
    q.push(root);
    seen[root] = 1;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      order.push_back(u);
      for (auto v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
  }

  QubitMap map(total, topo.nodes().size());
  std::size_t ti = 0;
  for (auto q : order) {
    while (true) {
      const auto cap = topo.node(traps[ti]).capacity;
      const auto limit = keep_spare ? cap - 1 : cap;
      if (map.chain(traps[ti]).size() < limit) break;
      ++ti;
    }
    map.place(q, traps[ti]);
  }
  return map;
}

CompiledSchedule compile_static_ejf(const SyndromeSchedule& sched, const Topology& topo, const QubitMap& map,
                                    const CompileOptions& opts) {
  Compiler c(topo, map, opts);
  const auto gates = flatten(sched);

  std::vector<std::vector<std::size_t>> succ(gates.size());
  std::vector<std::size_t> pending(gates.size(), 0);
  std::vector<std::size_t> last(map.qubit_count(), kNone);
  for (const auto& g : gates) {
    for (auto q : {g.op.ancilla, g.op.data_qubit}) {
      if (q >= last.size()) throw std::out_of_range("schedule references qubit " + std::to_string(q) + " outside the map");
      if (last[q] != kNone && (succ[last[q]].empty() || succ[last[q]].back() != g.id)) {
        succ[last[q]].push_back(g.id);
        ++pending[g.id];
      }
      last[q] = g.id;
    }
  }

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (const auto& g : gates) {
    if (pending[g.id] == 0) ready.push({c.earliest_start(g.op), g.id});
  }
  while (!ready.empty()) {
    const auto [key, id] = ready.top();
    ready.pop();
    const double now = c.earliest_start(gates[id].op);
    if (now > key) {
      ready.push({now, id});
      continue;
    }
    c.dispatch(gates[id], 0.0);
    for (auto s : succ[id]) {
      if (--pending[s] == 0) {
        ready.push({c.earliest_start(gates[s].op), s});
      }
    }
  }
  c.measure_epilogue(gates);
  return c.finish();
}

CompiledSchedule compile_dynamic(const SyndromeSchedule& sched, const Topology& topo, const QubitMap& map,
                                 const CompileOptions& opts) {
  Compiler c(topo, map, opts);
  const auto gates = flatten(sched);
  std::size_t next = 0;
  for (const auto& slice : sched.slices) {
    const double barrier = c.makespan();
    for (std::size_t i = 0; i < slice.size(); ++i) c.dispatch(gates[next++], barrier);
  }
  c.measure_epilogue(gates);
  return c.finish();
}

}  // namespace qccd
