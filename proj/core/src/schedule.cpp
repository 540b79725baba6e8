#include "qccd/schedule.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qccd {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Incidence {
  StabilizerRef stab;
  std::size_t data;
};

// Gates of one phase (or of the whole code) as (check, data) edges in
// stabilizer-ordinal order with ascending data ids.
std::vector<Incidence> incidences(const std::vector<Stabilizer>& stabs) {
  std::vector<Incidence> out;
  for (const auto& s : stabs) {
    for (auto d : s.support) out.push_back({{s.kind, s.index}, d});
  }
  return out;
}

void sort_slice(const CssCode& code, Timeslice& slice) {
  std::sort(slice.begin(), slice.end(), [&](const GateOp& a, const GateOp& b) {
    const auto oa = stabilizer_ordinal(code, a.stabilizer.kind, a.stabilizer.index);
    const auto ob = stabilizer_ordinal(code, b.stabilizer.kind, b.stabilizer.index);
    return oa != ob ? oa < ob : a.data_qubit < b.data_qubit;
  });
}

// Colours `stabs` x data with Delta colours; returns one slice per colour.
std::vector<Timeslice> color_slices(const CssCode& code, const std::vector<Stabilizer>& stabs) {
  const auto inc = incidences(stabs);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(inc.size());
  for (std::size_t i = 0; i < stabs.size(); ++i) {
    for (auto d : stabs[i].support) edges.emplace_back(d, i);
  }
  const auto colors = bipartite_edge_coloring(code.n(), stabs.size(), edges);
  std::size_t depth = 0;
  for (auto c : colors) depth = std::max(depth, c + 1);
  std::vector<Timeslice> slices(depth);
  for (std::size_t e = 0; e < inc.size(); ++e) {
    slices[colors[e]].push_back({inc[e].stab, inc[e].data, ancilla_of(code, inc[e].stab)});
  }
  for (auto& s : slices) sort_slice(code, s);
  return slices;
}

// Max degree of the bipartite graph stabs x data.
std::size_t phase_lower_bound(std::size_t n, const std::vector<Stabilizer>& stabs) {
  std::vector<std::size_t> data_deg(n, 0);
  std::size_t bound = 0;
  for (const auto& s : stabs) {
    bound = std::max(bound, s.weight());
    for (auto d : s.support) bound = std::max(bound, ++data_deg[d]);
  }
  return bound;
}

// Slices one phase by repeated maximum matching (Kuhn), tie-breaking on
// lowest stabilizer index then lowest data id.
std::vector<Timeslice> matching_slices(const CssCode& code, const std::vector<Stabilizer>& stabs) {
  std::vector<std::vector<std::size_t>> remaining;
  remaining.reserve(stabs.size());
  std::size_t left = 0;
  for (const auto& s : stabs) {
    remaining.push_back(s.support);
    left += s.support.size();
  }

  std::vector<Timeslice> slices;
  std::vector<std::size_t> data_owner(code.n(), kNone);
  std::vector<char> visited(code.n(), 0);

  auto augment = [&](auto&& self, std::size_t stab) -> bool {
    for (auto d : remaining[stab]) {
      if (visited[d]) continue;
      visited[d] = 1;
      if (data_owner[d] == kNone || self(self, data_owner[d])) {
        data_owner[d] = stab;
        return true;
      }
    }
    return false;
  };

  while (left > 0) {
    std::fill(data_owner.begin(), data_owner.end(), kNone);
    for (std::size_t s = 0; s < stabs.size(); ++s) {
      if (remaining[s].empty()) continue;
      std::fill(visited.begin(), visited.end(), 0);
      augment(augment, s);
    }
    Timeslice slice;
    for (std::size_t d = 0; d < code.n(); ++d) {
      const auto s = data_owner[d];
      if (s == kNone) continue;
      const StabilizerRef ref{stabs[s].kind, stabs[s].index};
      slice.push_back({ref, d, ancilla_of(code, ref)});
      auto& rem = remaining[s];
      rem.erase(std::find(rem.begin(), rem.end(), d));
      --left;
    }
    sort_slice(code, slice);
    slices.push_back(std::move(slice));
  }
  return slices;
}

std::vector<Timeslice> phase_slices(const CssCode& code, const std::vector<Stabilizer>& stabs) {
  if (stabs.empty()) return {};
  auto slices = matching_slices(code, stabs);
  if (slices.size() > phase_lower_bound(code.n(), stabs)) slices = color_slices(code, stabs);
  return slices;
}

}  // namespace

std::string to_string(StabilizerRef s) { return to_string(s.kind) + std::to_string(s.index); }

StabilizerRef parse_stabilizer_ref(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'X' && text[0] != 'Z')) {
    throw std::invalid_argument("bad stabilizer reference '" + text + "'");
  }
  return {text[0] == 'X' ? PauliKind::X : PauliKind::Z, std::stoul(text.substr(1))};
}

std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::EdgeColorable: return "EdgeColorable";
    case ScheduleKind::XThenZ: return "XThenZ";
    case ScheduleKind::Serial: return "Serial";
  }
  return "Serial";
}

ScheduleKind parse_schedule_kind(const std::string& text) {
  if (text == "EdgeColorable" || text == "edge") return ScheduleKind::EdgeColorable;
  if (text == "XThenZ" || text == "xz") return ScheduleKind::XThenZ;
  if (text == "Serial" || text == "serial") return ScheduleKind::Serial;
  throw std::invalid_argument("unknown schedule kind '" + text + "'");
}

std::size_t SyndromeSchedule::gate_count() const {
  std::size_t total = 0;
  for (const auto& s : slices) total += s.size();
  return total;
}

SyndromeSchedule schedule_serial(const CssCode& code) {
  SyndromeSchedule out{ScheduleKind::Serial, code.name(), {}};
  for (const auto& inc : incidences(stabilizers_of(code))) {
    out.slices.push_back({GateOp{inc.stab, inc.data, ancilla_of(code, inc.stab)}});
  }
  return out;
}

SyndromeSchedule schedule_x_then_z(const CssCode& code) {
  const auto all = stabilizers_of(code);
  const std::vector<Stabilizer> xs(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(code.m_x()));
  const std::vector<Stabilizer> zs(all.begin() + static_cast<std::ptrdiff_t>(code.m_x()), all.end());
  SyndromeSchedule out{ScheduleKind::XThenZ, code.name(), phase_slices(code, xs)};
  for (auto& s : phase_slices(code, zs)) out.slices.push_back(std::move(s));
  return out;
}

SyndromeSchedule schedule_edge_colorable(const CssCode& code) {
  if (code.family() != CodeFamily::HGP) {
    throw std::invalid_argument("schedule_edge_colorable: " + to_string(code.family()) +
                                " codes are not edge-colorable; use XThenZ");
  }
  return {ScheduleKind::EdgeColorable, code.name(), color_slices(code, stabilizers_of(code))};
}

ScheduleKind default_parallel_kind(const CssCode& code) {
  return code.family() == CodeFamily::HGP ? ScheduleKind::EdgeColorable : ScheduleKind::XThenZ;
}

SyndromeSchedule make_schedule(const CssCode& code, ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::EdgeColorable: return schedule_edge_colorable(code);
    case ScheduleKind::XThenZ: return schedule_x_then_z(code);
    case ScheduleKind::Serial: return schedule_serial(code);
  }
  return schedule_serial(code);
}

std::vector<std::size_t> bipartite_edge_coloring(std::size_t left_count, std::size_t right_count,
                                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> left_deg(left_count, 0);
  std::vector<std::size_t> right_deg(right_count, 0);
  for (const auto& [u, v] : edges) {
    ++left_deg[u];
    ++right_deg[v];
  }
  std::size_t delta = 0;
  for (auto d : left_deg) delta = std::max(delta, d);
  for (auto d : right_deg) delta = std::max(delta, d);

  // at_left[u * delta + c] = edge index coloured c at u
  std::vector<std::size_t> at_left(left_count * delta, kNone);
  std::vector<std::size_t> at_right(right_count * delta, kNone);
  std::vector<std::size_t> color(edges.size(), kNone);

  auto free_color = [&](const std::vector<std::size_t>& table, std::size_t vertex) {
    for (std::size_t c = 0; c < delta; ++c) {
      if (table[vertex * delta + c] == kNone) return c;
    }
    throw std::logic_error("bipartite_edge_coloring: no free colour (degree miscount)");
  };

  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    const std::size_t a = free_color(at_left, u);
    if (at_right[v * delta + a] != kNone) {
      const std::size_t b = free_color(at_right, v);
      // Alternating a/b path from v; swapping its colours frees a at v.
      std::vector<std::size_t> path;
      std::size_t vertex = v;
      bool on_right = true;
      std::size_t want = a;
      while (true) {
        const auto& table = on_right ? at_right : at_left;
        const std::size_t pe = table[vertex * delta + want];
        if (pe == kNone) break;
        path.push_back(pe);
        vertex = on_right ? edges[pe].first : edges[pe].second;
        on_right = !on_right;
        want = want == a ? b : a;
      }
      for (auto pe : path) {
        at_left[edges[pe].first * delta + color[pe]] = kNone;
        at_right[edges[pe].second * delta + color[pe]] = kNone;
      }
      for (auto pe : path) {
        color[pe] = color[pe] == a ? b : a;
        at_left[edges[pe].first * delta + color[pe]] = pe;
        at_right[edges[pe].second * delta + color[pe]] = pe;
      }
    }
    color[e] = a;
    at_left[u * delta + a] = e;
    at_right[v * delta + a] = e;
  }
  return color;
}

Ratio ideal_speedup(const CssCode& code, ScheduleKind kind) {
  if (kind == ScheduleKind::Serial) throw std::invalid_argument("ideal_speedup: kind must be parallel");
  const std::uint64_t serial = schedule_serial(code).depth();
  const std::uint64_t parallel = make_schedule(code, kind).depth();
  if (parallel == 0) return {1, 1};
  const std::uint64_t g = std::gcd(serial, parallel);
  return {serial / g, parallel / g};
}

nlohmann::json to_json(const SyndromeSchedule& s) {
  nlohmann::json slices = nlohmann::json::array();
  for (const auto& slice : s.slices) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : slice) {
      gates.push_back({{"stab", to_string(g.stabilizer)}, {"data", g.data_qubit}, {"anc", g.ancilla}});
    }
    slices.push_back(std::move(gates));
  }
  return {{"kind", to_string(s.kind)}, {"code", s.code_name}, {"slices", std::move(slices)}};
}

SyndromeSchedule schedule_from_json(const nlohmann::json& j) {
  SyndromeSchedule s;
  s.kind = parse_schedule_kind(j.at("kind").get<std::string>());
  s.code_name = j.value("code", std::string{});
  for (const auto& slice : j.at("slices")) {
    Timeslice ts;
    for (const auto& g : slice) {
      ts.push_back({parse_stabilizer_ref(g.at("stab").get<std::string>()), g.at("data").get<std::size_t>(),
                    g.at("anc").get<std::size_t>()});
    }
    s.slices.push_back(std::move(ts));
  }
  return s;
}

}  // namespace qccd
