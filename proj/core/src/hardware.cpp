#include "qccd/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qccd {

double OpTimes::junction_time(int degree) const {
  const int key = std::max(degree, 2);
  const auto it = junction_cross.find(key);
  if (it == junction_cross.end()) {
    throw std::out_of_range("OpTimes: no junction crossing time for degree " + std::to_string(key));
  }
  return it->second;
}

void validate(const OpTimes& t) {
  for (double v : {t.split, t.move, t.merge, t.gate_base, t.measure, t.swap_const}) {
    if (!(v >= 0.0)) throw std::invalid_argument("OpTimes: durations must be >= 0");
  }
  for (int d : {2, 3, 4}) {
    const auto it = t.junction_cross.find(d);
    if (it == t.junction_cross.end()) {
      throw std::invalid_argument("OpTimes: junction_cross missing degree " + std::to_string(d));
    }
    if (!(it->second >= 0.0)) throw std::invalid_argument("OpTimes: junction_cross must be >= 0");
  }
  if (t.gate_cap_threshold < 1) throw std::invalid_argument("OpTimes: gate_cap_threshold must be >= 1");
}

OpTimes op_times_from_json(const nlohmann::json& j) {
  OpTimes t;
  t.split = j.value("split", t.split);
  t.move = j.value("move", t.move);
  t.merge = j.value("merge", t.merge);
  t.gate_base = j.value("gate_base", t.gate_base);
  t.gate_cap_threshold = j.value("gate_cap_threshold", t.gate_cap_threshold);
  t.measure = j.value("measure", t.measure);
  t.swap_const = j.value("swap_const", t.swap_const);
  if (j.contains("junction_cross")) {
    for (const auto& [key, value] : j.at("junction_cross").items()) {
      t.junction_cross[std::stoi(key)] = value.get<double>();
    }
  }
  validate(t);
  return t;
}

nlohmann::json to_json(const OpTimes& t) {
  nlohmann::json jc = nlohmann::json::object();
  for (const auto& [deg, us] : t.junction_cross) jc[std::to_string(deg)] = us;
  return {{"split", t.split},
          {"move", t.move},
          {"merge", t.merge},
          {"junction_cross", jc},
          {"gate_base", t.gate_base},
          {"gate_cap_threshold", t.gate_cap_threshold},
          {"measure", t.measure},
          {"swap_const", t.swap_const}};
}

double gate_time(const OpTimes& times, std::size_t chain_len) {
  if (chain_len < 1) throw std::invalid_argument("gate_time: chain length must be >= 1");
  if (chain_len <= times.gate_cap_threshold) return times.gate_base;
  const double ratio = static_cast<double>(chain_len) / static_cast<double>(times.gate_cap_threshold);
  return times.gate_base * ratio * ratio;
}

std::string to_string(LayoutTag t) {
  switch (t) {
    case LayoutTag::GridBaseline: return "grid";
    case LayoutTag::AltGrid: return "altgrid";
    case LayoutTag::MeshJunction: return "mesh";
    case LayoutTag::Ring: return "ring";
    case LayoutTag::Custom: return "custom";
  }
  return "custom";
}

NodeId Topology::add_trap(std::size_t capacity) {
  nodes_.push_back({NodeKind::Trap, capacity, {}});
  traps_.push_back(nodes_.size() - 1);
  return nodes_.size() - 1;
}

NodeId Topology::add_junction() {
  nodes_.push_back({NodeKind::Junction, 0, {}});
  return nodes_.size() - 1;
}

EdgeId Topology::connect(NodeId a, NodeId b) {
  if (a >= nodes_.size() || b >= nodes_.size() || a == b) {
    throw std::invalid_argument("Topology::connect: bad endpoints");
  }
  edges_.push_back({a, b});
  const EdgeId id = edges_.size() - 1;
  nodes_[a].edges.push_back(id);
  nodes_[b].edges.push_back(id);
  return id;
}

std::vector<NodeId> Topology::junctions() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == NodeKind::Junction) out.push_back(i);
  }
  return out;
}

std::size_t Topology::total_capacity() const {
  std::size_t total = 0;
  for (auto t : traps_) total += nodes_[t].capacity;
  return total;
}

void Topology::set_trap_order(std::vector<NodeId> order) {
  auto a = order;
  auto b = traps_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("Topology::set_trap_order: not a permutation of the traps");
  traps_ = std::move(order);
}

Topology build_grid_baseline(std::size_t n_data, std::size_t capacity) {
  if (n_data < 1) throw std::invalid_argument("build_grid_baseline: n_data must be >= 1");
  const auto l = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_data)) - 1e-9));
  Topology t(LayoutTag::GridBaseline);
  std::vector<std::vector<NodeId>> junction(l, std::vector<NodeId>(l + 1));
  std::vector<std::vector<NodeId>> trap(l, std::vector<NodeId>(l));
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t c = 0; c <= l; ++c) {
      junction[r][c] = t.add_junction();
      if (c < l) trap[r][c] = t.add_trap(capacity);
    }
  }
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t c = 0; c < l; ++c) {
      t.connect(junction[r][c], trap[r][c]);
      t.connect(trap[r][c], junction[r][c + 1]);
    }
  }
  for (std::size_t r = 0; r + 1 < l; ++r) {
    for (std::size_t c = 0; c <= l; ++c) t.connect(junction[r][c], junction[r + 1][c]);
  }
  std::vector<NodeId> snake;
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t i = 0; i < l; ++i) snake.push_back(trap[r][r % 2 == 0 ? i : l - 1 - i]);
  }
  t.set_trap_order(std::move(snake));
  return t;
}

Topology build_alt_grid(std::size_t n_data, std::size_t capacity) {
  if (n_data < 1) throw std::invalid_argument("build_alt_grid: n_data must be >= 1");
  const auto l = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_data)) - 1e-9));
  const std::size_t trap_total = l * l;
  std::size_t b = 1;
  while (2 * b * (b + 1) < trap_total) ++b;

  Topology t(LayoutTag::AltGrid);
  std::vector<NodeId> junction((b + 1) * (b + 1));
  for (auto& j : junction) j = t.add_junction();
  auto at = [&](std::size_t r, std::size_t c) { return junction[r * (b + 1) + c]; };

  std::vector<std::pair<NodeId, NodeId>> lattice;
  for (std::size_t r = 0; r <= b; ++r) {
    for (std::size_t c = 0; c < b; ++c) lattice.emplace_back(at(r, c), at(r, c + 1));
    if (r < b) {
      for (std::size_t c = 0; c <= b; ++c) lattice.emplace_back(at(r, c), at(r + 1, c));
    }
  }
  const std::size_t e_total = lattice.size();
  for (std::size_t e = 0; e < e_total; ++e) {
    const bool has_trap = (e + 1) * trap_total / e_total > e * trap_total / e_total;
    const auto [ja, jb] = lattice[e];
    if (has_trap) {
      const NodeId trap = t.add_trap(capacity);
      t.connect(ja, trap);
      t.connect(trap, jb);
    } else {
      t.connect(ja, jb);
    }
  }
  return t;
}

Topology build_mesh_junction(std::size_t n_data, std::size_t capacity) {
  if (n_data < 4) throw std::invalid_argument("build_mesh_junction: n_data must be >= 4");
  const std::size_t k = (n_data + 3) / 4;
  Topology t(LayoutTag::MeshJunction);
  std::vector<NodeId> junction(k * k);
  for (auto& j : junction) j = t.add_junction();
  auto at = [&](std::size_t r, std::size_t c) { return junction[r * k + c]; };
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (c + 1 < k) t.connect(at(r, c), at(r, c + 1));
      if (r + 1 < k) t.connect(at(r, c), at(r + 1, c));
    }
  }
  // Boundary ports clockwise: top side, right side, bottom side, left side.
  std::vector<NodeId> ports;
  for (std::size_t c = 0; c < k; ++c) ports.push_back(at(0, c));
  for (std::size_t r = 0; r < k; ++r) ports.push_back(at(r, k - 1));
  for (std::size_t c = k; c-- > 0;) ports.push_back(at(k - 1, c));
  for (std::size_t r = k; r-- > 0;) ports.push_back(at(r, 0));
  for (std::size_t i = 0; i < n_data; ++i) {
    const NodeId trap = t.add_trap(capacity);
    t.connect(trap, ports[i * ports.size() / n_data]);
  }
  return t;
}

Topology build_ring(std::size_t x, std::size_t capacity) {
  if (x < 1) throw std::invalid_argument("build_ring: x must be >= 1");
  Topology t(LayoutTag::Ring);
  t.set_unidirectional(true);
  std::vector<NodeId> trap(x);
  for (auto& id : trap) id = t.add_trap(capacity);
  if (x == 1) return t;
  const std::size_t corners = std::min<std::size_t>(4, x);
  std::vector<char> cornered(x, 0);
  for (std::size_t j = 0; j < corners; ++j) cornered[j * x / corners] = 1;
  for (std::size_t i = 0; i < x; ++i) {
    const NodeId from = trap[i];
    const NodeId to = trap[(i + 1) % x];
    if (cornered[i]) {
      const NodeId j = t.add_junction();
      t.connect(from, j);
      t.connect(j, to);
    } else {
      t.connect(from, to);
    }
  }
  return t;
}

std::vector<Violation> validate_topology(const Topology& t) {
  std::vector<Violation> out;
  const auto& nodes = t.nodes();
  for (NodeId i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.kind == NodeKind::Trap) {
      if (n.edges.size() > 2) {
        out.push_back({ViolationKind::TrapDegree, i,
                       "trap degree " + std::to_string(n.edges.size()) + " > 2 at node " + std::to_string(i)});
      }
      if (n.capacity < 1) {
        out.push_back({ViolationKind::Capacity, i, "trap capacity < 1 at node " + std::to_string(i)});
      }
    } else if (n.edges.size() > 4) {
      out.push_back({ViolationKind::JunctionDegree, i,
                     "junction degree " + std::to_string(n.edges.size()) + " > 4 at node " + std::to_string(i)});
    }
  }
  if (!nodes.empty()) {
    std::vector<char> seen(nodes.size(), 0);
    std::queue<NodeId> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (auto e : nodes[u].edges) {
        const NodeId v = t.edge(e).other(u);
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
    const auto it = std::find(seen.begin(), seen.end(), 0);
    if (it != seen.end()) {
      const auto first = static_cast<NodeId>(it - seen.begin());
      out.push_back({ViolationKind::Disconnected, first,
                     "disconnected: node " + std::to_string(first) + " unreachable from node 0"});
    }
  }
  return out;
}

std::size_t trap_path_count(const Topology& t) {
  std::size_t through = 0;
  for (const auto& n : t.nodes()) {
    if (n.kind == NodeKind::Junction && n.edges.size() == 2) ++through;
  }
  return t.edges().size() - through;
}

nlohmann::json to_json(const Topology& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId i = 0; i < t.nodes().size(); ++i) {
    const auto& n = t.nodes()[i];
    nodes.push_back({{"kind", n.kind == NodeKind::Trap ? "trap" : "junction"},
                     {"id", i},
                     {"cap", n.capacity},
                     {"deg", n.edges.size()}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : t.edges()) edges.push_back({e.a, e.b});
  return {{"layout_tag", to_string(t.tag())},
          {"unidirectional", t.unidirectional()},
          {"trap_order", t.traps()},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

}  // namespace qccd
