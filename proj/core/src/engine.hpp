#ifndef QCCD_SRC_ENGINE_HPP
#define QCCD_SRC_ENGINE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qccd/compiler.hpp"
#include "qccd/hardware.hpp"

namespace qccd::detail {

/// Interval a plan needs on one resource, as offsets from the plan's start.
struct Hold {
  std::size_t resource = 0;
  double enter = 0.0;
  double exit = 0.0;
};

struct Fit {
  double start = 0.0;
  std::optional<std::size_t> binding;  // resource that forced the delay
};

/// Per-resource free-at frontier over all traps, junctions and shuttle paths.
/// Resource ids: node ids first, then edge ids offset by the node count.
class ResourceBook {
 public:
  explicit ResourceBook(const Topology& topo);

  std::size_t node(NodeId n) const noexcept { return n; }
  std::size_t edge(EdgeId e) const noexcept { return node_count_ + e; }
  Location location(std::size_t resource) const;

  /// Earliest start >= ready at which every hold begins after its resource frees up.
  Fit fit(double ready, const std::vector<Hold>& holds) const;
  void commit(double start, const std::vector<Hold>& holds, std::size_t actor, bool transit);

  double free_at(std::size_t r) const { return slots_.at(r).free_at; }
  bool last_was_transit(std::size_t r) const { return slots_.at(r).transit; }
  std::optional<std::size_t> last_holder(std::size_t r) const { return slots_.at(r).holder; }

 private:
  struct Slot {
    double free_at = 0.0;
    std::optional<std::size_t> holder;
    bool transit = false;
  };
  const Topology* topo_;
  std::size_t node_count_;
  std::vector<Slot> slots_;
};

/// Shortest decimal form that round-trips.
std::string format_double(double v);

}  // namespace qccd::detail

#endif  // QCCD_SRC_ENGINE_HPP
