#ifndef QCCD_SCHEDULE_HPP
#define QCCD_SCHEDULE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qccd/codes.hpp"

namespace qccd {

struct StabilizerRef {
  PauliKind kind = PauliKind::X;
  std::size_t index = 0;
  friend bool operator==(const StabilizerRef&, const StabilizerRef&) = default;
  friend auto operator<=>(const StabilizerRef&, const StabilizerRef&) = default;
};

std::string to_string(StabilizerRef s);  // "X3", "Z17"
StabilizerRef parse_stabilizer_ref(const std::string& text);

/// One CX between a data qubit and the ancilla of a stabilizer. X-check gates
/// are H-framed on the ancilla; only the stabilizer kind records that.
struct GateOp {
  StabilizerRef stabilizer;
  std::size_t data_qubit = 0;
  std::size_t ancilla = 0;
  friend bool operator==(const GateOp&, const GateOp&) = default;
};

using Timeslice = std::vector<GateOp>;

enum class ScheduleKind { EdgeColorable, XThenZ, Serial };
std::string to_string(ScheduleKind k);
ScheduleKind parse_schedule_kind(const std::string& text);

struct SyndromeSchedule {
  ScheduleKind kind = ScheduleKind::Serial;
  std::string code_name;
  std::vector<Timeslice> slices;

  std::size_t depth() const noexcept { return slices.size(); }
  std::size_t gate_count() const;
};

/// Ancillas are one per stabilizer: id = n + stabilizer ordinal.
inline std::size_t ancilla_of(const CssCode& code, StabilizerRef s) {
  return code.n() + stabilizer_ordinal(code, s.kind, s.index);
}

/// One gate per slice, stabilizers in ordinal order, data ascending.
SyndromeSchedule schedule_serial(const CssCode& code);

/// All X checks, then all Z checks. Each phase is sliced by repeated maximum
/// matching (lowest stabilizer index, then lowest data id); a phase that
/// overshoots its lower bound is re-sliced by a Koenig edge colouring.
SyndromeSchedule schedule_x_then_z(const CssCode& code);

/// Proper edge colouring of the whole Tanner graph (X and Z checks together);
/// depth equals the maximum Tanner-graph degree. HGP codes only.
SyndromeSchedule schedule_edge_colorable(const CssCode& code);

/// Maximal-parallel kind appropriate for the code family.
ScheduleKind default_parallel_kind(const CssCode& code);
SyndromeSchedule make_schedule(const CssCode& code, ScheduleKind kind);

/// Koenig colouring of a bipartite multigraph-free edge list. Left vertices are
/// [0, left_count), right [0, right_count). Returns one colour per edge in
/// [0, max degree). Edges are coloured in the given order.
std::vector<std::size_t> bipartite_edge_coloring(std::size_t left_count, std::size_t right_count,
                                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges);

struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// serial depth / parallel depth, reduced.
Ratio ideal_speedup(const CssCode& code, ScheduleKind kind);

nlohmann::json to_json(const SyndromeSchedule& s);
SyndromeSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace qccd

#endif  // QCCD_SCHEDULE_HPP
