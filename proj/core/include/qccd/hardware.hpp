#ifndef QCCD_HARDWARE_HPP
#define QCCD_HARDWARE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qccd {

/// Primitive operation durations in microseconds.
struct OpTimes {
  double split = 80.0;
  double move = 10.0;
  double merge = 80.0;
  std::map<int, double> junction_cross{{2, 10.0}, {3, 100.0}, {4, 120.0}};
  double gate_base = 40.0;
  std::size_t gate_cap_threshold = 12;
  double measure = 150.0;
  double swap_const = 42.0;

  /// Crossing time for a junction of the given degree. Degree-1 junctions
  /// (dead ends) are priced like degree 2.
  double junction_time(int degree) const;
};

void validate(const OpTimes& t);
OpTimes op_times_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OpTimes& t);

/// Two-qubit gate time for an ion chain of `chain_len` ions: flat up to the
/// threshold, quadratic in chain length above it.
double gate_time(const OpTimes& times, std::size_t chain_len);

enum class NodeKind { Trap, Junction };
enum class LayoutTag { GridBaseline, AltGrid, MeshJunction, Ring, Custom };

std::string to_string(LayoutTag t);

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Node {
  NodeKind kind = NodeKind::Trap;
  std::size_t capacity = 0;     // traps only
  std::vector<EdgeId> edges;    // incident shuttle paths, in insertion order
};

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  NodeId other(NodeId n) const noexcept { return n == a ? b : a; }
};

/// Trap/junction graph joined by shuttle paths. Node ids are shared between
/// traps and junctions. A trap's first incident path enters/leaves its chain
/// at the front, its second at the back.
class Topology {
 public:
  explicit Topology(LayoutTag tag = LayoutTag::Custom) : tag_(tag) {}

  NodeId add_trap(std::size_t capacity);
  NodeId add_junction();
  EdgeId connect(NodeId a, NodeId b);

  LayoutTag tag() const noexcept { return tag_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  bool is_trap(NodeId id) const { return nodes_.at(id).kind == NodeKind::Trap; }
  std::size_t degree(NodeId id) const { return nodes_.at(id).edges.size(); }

  /// Trap ids in the layout's fill order (snake order for grids, ring order for rings).
  const std::vector<NodeId>& traps() const noexcept { return traps_; }
  std::vector<NodeId> junctions() const;
  std::size_t trap_count() const noexcept { return traps_.size(); }
  std::size_t junction_count() const noexcept { return nodes_.size() - traps_.size(); }
  std::size_t total_capacity() const;

  /// Reorders traps() (must be a permutation of the current list).
  void set_trap_order(std::vector<NodeId> order);

  /// Ring layouts only: shuttle direction is traps()[i] -> traps()[i+1 mod x].
  bool unidirectional() const noexcept { return unidirectional_; }
  void set_unidirectional(bool v) noexcept { unidirectional_ = v; }

 private:
  LayoutTag tag_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<NodeId> traps_;
  bool unidirectional_ = false;
};

/// l x l traps, l = ceil(sqrt(n)). Every row is J T J T ... T J with a
/// vertical junction column between each pair of adjacent traps (and at both
/// row ends); junctions in a column are linked row to row.
Topology build_grid_baseline(std::size_t n_data, std::size_t capacity);

/// Junction lattice of (b+1)^2 junctions with traps sitting on lattice edges,
/// alternating horizontal and vertical. b is the smallest value whose 2b(b+1)
/// lattice edges hold l^2 traps; leftover edges are bare junction paths,
/// spread evenly. Corner junctions are L-shaped (degree 2).
Topology build_alt_grid(std::size_t n_data, std::size_t capacity);

/// ceil(n/4) x ceil(n/4) junction mesh with n single-path traps attached to
/// the free boundary ports, spread evenly clockwise from the top-left corner.
Topology build_mesh_junction(std::size_t n_data, std::size_t capacity);

/// x traps in a unidirectional cycle with min(4, x) degree-2 corner junctions
/// (none for x = 1).
Topology build_ring(std::size_t x, std::size_t capacity);

enum class ViolationKind { TrapDegree, JunctionDegree, Disconnected, Capacity };

struct Violation {
  ViolationKind kind;
  NodeId node;
  std::string message;
};

std::vector<Violation> validate_topology(const Topology& t);

/// Number of trap-to-trap shuttle paths, i.e. edges once junction chains of
/// degree-2 junctions are contracted. Used to describe ring structure.
std::size_t trap_path_count(const Topology& t);

nlohmann::json to_json(const Topology& t);

}  // namespace qccd

#endif  // QCCD_HARDWARE_HPP
