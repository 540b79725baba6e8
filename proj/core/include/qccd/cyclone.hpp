#ifndef QCCD_CYCLONE_HPP
#define QCCD_CYCLONE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qccd/codes.hpp"
#include "qccd/compiler.hpp"
#include "qccd/hardware.hpp"

namespace qccd {

struct CycloneConfig {
  std::size_t x = 1;          // traps on the ring
  std::size_t capacity = 0;   // ions per trap
  OpTimes times;
  SwapPolicy swap = SwapPolicy::GateSwap;
  std::optional<double> ionswap_s;
};

/// Round-robin by data id: trap t holds {d : d mod x == t}.
std::vector<std::vector<std::size_t>> partition_data(std::size_t n, std::size_t x);

/// Ancilla i serves X_i in the first rotation and Z_i in the second; with
/// m_x != m_z the surplus ancillas idle in the shorter rotation.
struct RotationAssignment {
  std::size_t ancillas = 0;
  std::vector<std::optional<StabilizerRef>> x_phase;
  std::vector<std::optional<StabilizerRef>> z_phase;
};

RotationAssignment assign_rotations(const CssCode& code);

/// Smallest capacity a Cyclone ring needs: ceil(n/x) + ceil(max(m_x, m_z)/x).
std::size_t cyclone_min_capacity(const CssCode& code, std::size_t x);

/// Sweep capacity rule ceil(n/x) + ceil(m/x) with m the total stabilizer count.
std::size_t tight_capacity(std::size_t n, std::size_t m, std::size_t x);

/// Per-step lockstep shuttle time: split + move + degree-2 crossing + merge.
double cyclone_shuttle_time(const OpTimes& times);

struct CycloneResult {
  CompiledSchedule schedule;
  Topology topology;
  std::size_t shuttle_phases = 0;
  std::vector<GateOp> executed;   // every CX in execution order
};

/// Event-level Cyclone compilation on build_ring(x, capacity). Throws
/// std::invalid_argument for x = 0 or insufficient capacity.
CycloneResult cyclone_compile(const CssCode& code, const CycloneConfig& cfg);

/// Worst-case time over all codes with this shape:
/// 2x (s + A (t + g D)) + 2 A measure, A = ceil(max(m_x,m_z)/x),
/// D = ceil(n/x), g = gate_time(capacity), t = swap cost at capacity with d_l = D.
double cyclone_bound(const CssCode& code, const CycloneConfig& cfg);

/// The closed form 2x (s + ceil(m/x) (t + g ceil(xn/m))) with m the total
/// stabilizer count, evaluated as written.
double cyclone_bound_literal(const CssCode& code, const CycloneConfig& cfg);

/// traps * execution time * ancillas.
double spacetime_cost(const ExecStats& stats, std::size_t traps, std::size_t ancillas);

struct TrapSweepRow {
  std::size_t x = 0;
  std::size_t capacity = 0;
  double total_us = 0.0;
  double bound_us = 0.0;
  double spacetime = 0.0;
  std::string error;   // empty on success
};

/// One Cyclone compilation per x. With tight = true the capacity follows
/// tight_capacity(); otherwise `capacity` is used for every x. Rows come back
/// sorted by x; failures are recorded in the row and the sweep continues.
std::vector<TrapSweepRow> sweep_traps(const CssCode& code, const std::vector<std::size_t>& xs, bool tight,
                                      std::size_t capacity, const CycloneConfig& base, unsigned jobs = 1);

std::string trap_sweep_csv_header();
std::string trap_sweep_csv_row(const TrapSweepRow& row);

}  // namespace qccd

#endif  // QCCD_CYCLONE_HPP
