#ifndef QCCD_COMPILER_HPP
#define QCCD_COMPILER_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qccd/codes.hpp"
#include "qccd/hardware.hpp"
#include "qccd/schedule.hpp"

namespace qccd {

/// Qubit placement: every qubit sits in one trap at a chain position.
/// Qubit ids are data 0..n-1 followed by ancillas n..n+m-1.
class QubitMap {
 public:
  QubitMap() = default;
  QubitMap(std::size_t qubit_count, std::size_t node_count);

  /// Appends `q` to the back of `trap`'s chain.
  void place(std::size_t q, NodeId trap);

  std::size_t qubit_count() const noexcept { return trap_.size(); }
  bool placed(std::size_t q) const { return trap_.at(q) != kUnplaced; }
  NodeId trap_of(std::size_t q) const;
  std::size_t slot_of(std::size_t q) const;
  const std::vector<std::size_t>& chain(NodeId trap) const { return chains_.at(trap); }
  const std::vector<std::vector<std::size_t>>& chains() const noexcept { return chains_; }

  friend bool operator==(const QubitMap&, const QubitMap&) = default;

 private:
  static constexpr NodeId kUnplaced = static_cast<NodeId>(-1);
  std::vector<std::vector<std::size_t>> chains_;
  std::vector<NodeId> trap_;
};

/// Throws std::invalid_argument if a qubit is unplaced, sits on a junction,
/// or a trap is over capacity.
void validate_map(const QubitMap& map, const Topology& topo);

/// BFS over the code's interaction graph (lowest unvisited id first,
/// neighbours ascending), filling traps in fill order. Each trap keeps one
/// free slot when the total allows it. Throws std::runtime_error on
/// insufficient capacity.
QubitMap map_greedy_cluster(const CssCode& code, const Topology& topo);

enum class EventKind { Split, Move, Merge, JunctionCross, GateSwap, IonSwap, Rebalance, Gate, Measure };
std::string to_string(EventKind k);

enum class LocationKind { Trap, Junction, Edge };
std::string to_string(LocationKind k);

struct Location {
  LocationKind kind = LocationKind::Trap;
  std::size_t id = 0;
  friend bool operator==(const Location&, const Location&) = default;
};

struct ShuttleEvent {
  EventKind kind = EventKind::Gate;
  std::vector<std::size_t> actors;
  Location location;
  std::optional<Location> target;             // Rebalance destination
  std::optional<StabilizerRef> stabilizer;    // Gate / Measure
  double start = 0.0;
  double duration = 0.0;
  double end() const noexcept { return start + duration; }
};

struct Stall {
  double time = 0.0;       // when the blocked actor was ready
  Location resource;       // binding resource
  std::size_t actor = 0;
  double stall = 0.0;      // µs waited
};

struct ExecStats {
  double total_time = 0.0;
  std::map<EventKind, double> component_times;
  std::size_t roadblock_count = 0;
  double roadblock_time = 0.0;
  double parallel_fraction = 1.0;
  std::size_t event_count = 0;
  std::size_t rebalance_count = 0;

  double component(EventKind k) const;
  double component_sum() const;
};

ExecStats compute_stats(const std::vector<ShuttleEvent>& events, const std::vector<Stall>& stalls);

struct CompiledSchedule {
  std::vector<ShuttleEvent> events;   // sorted by start (stable)
  ExecStats stats;
  std::vector<Stall> stalls;
  QubitMap initial_map;
};

enum class SwapPolicy { GateSwap, IonSwap };
std::string to_string(SwapPolicy p);
SwapPolicy parse_swap_policy(const std::string& text);

struct CompileOptions {
  OpTimes times;
  SwapPolicy swap = SwapPolicy::GateSwap;
  std::optional<double> ionswap_s;     // IonSwap per-step constant; split time if unset
  std::size_t rebalance_budget = 3;    // per gate
};

/// GateSwap: 3 * gate_time(chain_len). IonSwap: s*d_l + s*(d_l-1) + swap_const
/// with s = split unless overridden. Throws std::invalid_argument for IonSwap
/// with d_l < 1.
double swap_cost(SwapPolicy policy, const OpTimes& times, std::size_t chain_len, std::size_t d_l,
                 std::optional<double> ionswap_s = std::nullopt);

/// Earliest-job-first list scheduling over the schedule's dependency DAG
/// (each gate depends on the previous gates of its two qubits).
CompiledSchedule compile_static_ejf(const SyndromeSchedule& sched, const Topology& topo, const QubitMap& map,
                                    const CompileOptions& opts);

/// Slice-by-slice dispatch with a global barrier between slices.
CompiledSchedule compile_dynamic(const SyndromeSchedule& sched, const Topology& topo, const QubitMap& map,
                                 const CompileOptions& opts);

struct RoadblockReport {
  std::vector<Stall> stalls;
  std::size_t count = 0;
  double total = 0.0;
};

RoadblockReport detect_roadblocks(const CompiledSchedule& cs);

/// Independent re-simulation of an emitted trace: recomputes the makespan and
/// component totals, tracks every ion's location, and audits resource
/// exclusivity and trap capacity.
struct ReplayReport {
  double total_time = 0.0;
  std::map<EventKind, double> component_times;
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ReplayReport replay(const CompiledSchedule& cs, const Topology& topo);

/// One JSON object per event, fixed key order.
void write_trace_jsonl(const CompiledSchedule& cs, std::ostream& out);

std::string stats_csv_header();
std::string stats_csv_row(const std::string& code, const std::string& layout, const std::string& mode,
                          const ExecStats& stats);

}  // namespace qccd

#endif  // QCCD_COMPILER_HPP
