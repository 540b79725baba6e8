#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qccd/compiler.hpp"
#include "qccd/experiment.hpp"

using qccd::EventKind;
using qccd::NodeId;

namespace {

// T0 - T1 - T2 on a line; each trap's first path is its front end.
struct Line {
  qccd::Topology topo;
  NodeId t0, t1, t2;
  Line() {
    t0 = topo.add_trap(3);
    t1 = topo.add_trap(3);
    t2 = topo.add_trap(3);
    topo.connect(t0, t1);
    topo.connect(t1, t2);
  }
};

qccd::GateOp gate(std::size_t index, std::size_t data, std::size_t anc) {
  return {{qccd::PauliKind::X, index}, data, anc};
}

}  // namespace

TEST(SwapCost, Formulas) {
  const qccd::OpTimes t;
  EXPECT_EQ(qccd::swap_cost(qccd::SwapPolicy::GateSwap, t, 4, 3), 120.0);
  EXPECT_EQ(qccd::swap_cost(qccd::SwapPolicy::IonSwap, t, 4, 3), 80.0 * 3 + 80.0 * 2 + 42.0);
  EXPECT_EQ(qccd::swap_cost(qccd::SwapPolicy::IonSwap, t, 4, 1, 50.0), 50.0 + 42.0);
  EXPECT_THROW(qccd::swap_cost(qccd::SwapPolicy::IonSwap, t, 4, 0), std::invalid_argument);
  EXPECT_EQ(qccd::parse_swap_policy("ion"), qccd::SwapPolicy::IonSwap);
  EXPECT_THROW(qccd::parse_swap_policy("teleport"), std::invalid_argument);
}

TEST(QubitMap, PlacementAndValidation) {
  Line l;
  qccd::QubitMap map(3, l.topo.nodes().size());
  map.place(0, l.t0);
  map.place(1, l.t0);
  EXPECT_EQ(map.slot_of(1), 1u);
  EXPECT_THROW(qccd::validate_map(map, l.topo), std::invalid_argument);  // qubit 2 unplaced
  map.place(2, l.t2);
  EXPECT_NO_THROW(qccd::validate_map(map, l.topo));
  EXPECT_THROW(map.place(2, l.t1), std::invalid_argument);
}

// Hand-timed single shuttle through a pass-through trap, then a second gate
// that must wait for that transit to clear T1.
TEST(Compiler, LineStallOracle) {
  Line l;
  // data 0 @T2, data 2 @T1, ancilla 1 @T0, ancilla 3 @T1
  qccd::QubitMap map(4, l.topo.nodes().size());
  map.place(1, l.t0);
  map.place(2, l.t1);
  map.place(3, l.t1);
  map.place(0, l.t2);
  qccd::SyndromeSchedule sched;
  sched.slices = {{gate(0, 0, 1), gate(1, 2, 3)}};
  const qccd::CompileOptions opts{};
  const auto cs = qccd::compile_dynamic(sched, l.topo, map, opts);

  // split 80, move 10, merge 80 (T1 chain 3), swap 3*g(3)=120, split 80, move 10, merge 80, gate 40
  const double a_in_t1 = 80 + 10;
  const double a_out_t1 = a_in_t1 + 80 + 120 + 80;
  const double a_gate = a_out_t1 + 10 + 80;
  EXPECT_DOUBLE_EQ(a_gate, 460.0);
  const auto& ev = cs.events;
  auto find = [&](EventKind k, std::size_t actor) {
    for (const auto& e : ev) {
      if (e.kind == k && e.actors.back() == actor) return e;
    }
    ADD_FAILURE() << "missing event";
    return qccd::ShuttleEvent{};
  };
  EXPECT_DOUBLE_EQ(find(EventKind::Gate, 1).start, a_gate);
  // Second gate waits for T1 to be released by the transit.
  const auto g2 = find(EventKind::Gate, 3);
  EXPECT_DOUBLE_EQ(g2.start, a_out_t1);
  ASSERT_EQ(cs.stalls.size(), 1u);
  EXPECT_EQ(cs.stalls[0].actor, 3u);
  EXPECT_DOUBLE_EQ(cs.stalls[0].stall, a_out_t1);
  EXPECT_EQ(cs.stalls[0].resource, (qccd::Location{qccd::LocationKind::Trap, l.t1}));
  // Measures: ancilla 1 at 500, ancilla 3 right after its gate.
  EXPECT_DOUBLE_EQ(cs.stats.total_time, 500.0 + 150.0);
  EXPECT_EQ(qccd::detect_roadblocks(cs).count, 1u);
  const auto rep = qccd::replay(cs, l.topo);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.total_time, cs.stats.total_time);
}

TEST(Compiler, FullDestinationTriggersRebalance) {
  Line l;
  qccd::Topology topo;
  const auto a = topo.add_trap(2);
  const auto b = topo.add_trap(2);
  const auto c = topo.add_trap(2);
  topo.connect(a, b);
  topo.connect(b, c);
  qccd::QubitMap map(4, topo.nodes().size());
  map.place(2, a);  // ancilla
  map.place(0, b);
  map.place(1, b);  // bystander filling b
  map.place(3, c);
  qccd::SyndromeSchedule sched;
  sched.slices = {{gate(0, 0, 2)}};
  const auto cs = qccd::compile_dynamic(sched, topo, map, {});
  EXPECT_EQ(cs.stats.rebalance_count, 1u);
  EXPECT_TRUE(qccd::replay(cs, topo).ok());
}

TEST(Compiler, UnroutableGateReportsError) {
  qccd::Topology topo;
  const auto a = topo.add_trap(2);
  const auto b = topo.add_trap(2);
  qccd::QubitMap map(2, topo.nodes().size());
  map.place(0, a);
  map.place(1, b);
  qccd::SyndromeSchedule sched;
  sched.slices = {{gate(0, 0, 1)}};
  EXPECT_THROW(qccd::compile_dynamic(sched, topo, map, {}), std::runtime_error);
}

TEST(Compiler, DeterministicAndReplayable) {
  const auto code = qccd::code_preset("hgp58");
  qccd::ExperimentSpec spec;
  spec.code = "hgp58";
  for (auto mode : {qccd::Mode::Ejf, qccd::Mode::Dynamic, qccd::Mode::Serial}) {
    spec.mode = mode;
    const auto a = qccd::run_experiment(code, spec, {});
    const auto b = qccd::run_experiment(code, spec, {});
    std::ostringstream ta, tb;
    qccd::write_trace_jsonl(a.schedule, ta);
    qccd::write_trace_jsonl(b.schedule, tb);
    EXPECT_EQ(ta.str(), tb.str());
    const auto rep = qccd::replay(a.schedule, a.topology);
    EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
    EXPECT_EQ(rep.total_time, a.schedule.stats.total_time);
  }
}

TEST(Compiler, ParallelFractionInUnitInterval) {
  const auto code = qccd::code_preset("hgp58");
  const auto r = qccd::run_experiment(code, {}, {});
  EXPECT_GT(r.schedule.stats.parallel_fraction, 0.0);
  EXPECT_LE(r.schedule.stats.parallel_fraction, 1.0);
  EXPECT_DOUBLE_EQ(r.schedule.stats.parallel_fraction,
                   r.schedule.stats.total_time / r.schedule.stats.component_sum());
}

TEST(Compiler, ReplayDetectsTampering) {
  const auto code = qccd::code_preset("hgp5");
  auto r = qccd::run_experiment(code, {}, {});
  auto cs = r.schedule;
  // Overlap two events on the same trap.
  for (auto& e : cs.events) {
    if (e.kind == EventKind::Gate) {
      for (const auto& f : cs.events) {
        if (&f != &e && f.location == e.location && f.kind == EventKind::Gate) {
          e.start = f.start;
          break;
        }
      }
      break;
    }
  }
  EXPECT_FALSE(qccd::replay(cs, r.topology).ok());
}

TEST(Compiler, TraceFormat) {
  const auto code = qccd::code_preset("hgp5");
  const auto r = qccd::run_experiment(code, {}, {});
  std::ostringstream os;
  qccd::write_trace_jsonl(r.schedule, os);
  std::istringstream is(os.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(is, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("kind"));
    EXPECT_TRUE(j.contains("start"));
    EXPECT_TRUE(j.contains("duration"));
    ++count;
  }
  EXPECT_EQ(count, r.schedule.events.size());
}

TEST(Compiler, GreedyMapRejectsOverflow) {
  const auto code = qccd::code_preset("hgp58");
  EXPECT_THROW(qccd::map_greedy_cluster(code, qccd::build_ring(2, 3)), std::runtime_error);
}
