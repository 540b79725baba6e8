#include "qccd/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "engine.hpp"
#include "parallel.hpp"

namespace qccd {

Config config_from_json(const nlohmann::json& j) {
  Config c;
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (j.contains("op_times")) c.times = op_times_from_json(j.at("op_times"));
  if (j.contains("coherence_fit")) c.coherence_fit = parse_coherence_fit(j.at("coherence_fit").get<std::string>());
  if (j.contains("swap_policy")) c.swap = parse_swap_policy(j.at("swap_policy").get<std::string>());
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("ionswap_s") && !j.at("ionswap_s").is_null()) c.ionswap_s = j.at("ionswap_s").get<double>();
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return config_from_json(nlohmann::json::parse(in));
}

nlohmann::json to_json(const Config& c) {
  nlohmann::json j{{"op_times", to_json(c.times)},
                   {"coherence_fit", to_string(c.coherence_fit)},
                   {"swap_policy", to_string(c.swap)},
                   {"seed", c.seed}};
  if (c.ionswap_s) j["ionswap_s"] = *c.ionswap_s;
  return j;
}

std::string to_string(Layout l) {
  switch (l) {
    case Layout::Grid: return "grid";
    case Layout::AltGrid: return "altgrid";
    case Layout::Mesh: return "mesh";
    case Layout::Ring: return "ring";
  }
  return "grid";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Ejf: return "ejf";
    case Mode::Dynamic: return "dynamic";
    case Mode::Cyclone: return "cyclone";
    case Mode::Serial: return "serial";
  }
  return "ejf";
}

Layout parse_layout(const std::string& text) {
  if (text == "grid") return Layout::Grid;
  if (text == "altgrid") return Layout::AltGrid;
  if (text == "mesh") return Layout::Mesh;
  if (text == "ring") return Layout::Ring;
  throw std::invalid_argument("unknown layout '" + text + "'");
}

Mode parse_mode(const std::string& text) {
  if (text == "ejf") return Mode::Ejf;
  if (text == "dynamic") return Mode::Dynamic;
  if (text == "cyclone") return Mode::Cyclone;
  if (text == "serial") return Mode::Serial;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

void validate(const ExperimentSpec& spec) {
  if (spec.mode == Mode::Cyclone && spec.layout != Layout::Ring) {
    throw std::invalid_argument("incompatible layout/mode: cyclone requires the ring layout");
  }
  if (spec.layout == Layout::Ring && spec.mode != Mode::Cyclone) {
    throw std::invalid_argument("incompatible layout/mode: the ring layout requires cyclone mode");
  }
  if (spec.layout == Layout::Mesh && spec.mode != Mode::Dynamic) {
    throw std::invalid_argument("incompatible layout/mode: mesh requires dynamic mode");
  }
  if (spec.traps && *spec.traps == 0) throw std::invalid_argument("traps must be >= 1");
  if (spec.capacity && *spec.capacity == 0) throw std::invalid_argument("capacity must be >= 1");
}

ExperimentResult run_experiment(const CssCode& code, const ExperimentSpec& spec, const Config& cfg) {
  validate(spec);
  ExperimentResult out;
  out.code = code.name().empty() ? spec.code : code.name();
  out.spec = spec;

  if (spec.layout == Layout::Ring) {
    const std::size_t x = spec.traps.value_or(std::max(code.m_x(), code.m_z()));
    std::size_t cap = cyclone_min_capacity(code, x);
    if (spec.tight) cap = tight_capacity(code.n(), code.m(), x);
    if (spec.capacity) cap = *spec.capacity;
    const CycloneConfig cc{x, cap, cfg.times, cfg.swap, cfg.ionswap_s};
    auto res = cyclone_compile(code, cc);
    out.schedule = std::move(res.schedule);
    out.topology = std::move(res.topology);
    out.traps = x;
    out.ancillas = std::max(code.m_x(), code.m_z());
    out.bound = cyclone_bound(code, cc);
    return out;
  }

  const std::size_t cap = spec.capacity.value_or(kDefaultCapacity);
  switch (spec.layout) {
    case Layout::Grid: out.topology = build_grid_baseline(code.n(), cap); break;
    case Layout::AltGrid: out.topology = build_alt_grid(code.n(), cap); break;
    case Layout::Mesh: out.topology = build_mesh_junction(code.n(), cap); break;
    case Layout::Ring: break;
  }

  const CompileOptions opts{cfg.times, cfg.swap, cfg.ionswap_s, 3};
  const auto map = map_greedy_cluster(code, out.topology);
  out.traps = out.topology.trap_count();
  out.ancillas = code.m();
  switch (spec.mode) {
    case Mode::Ejf:
      out.schedule = compile_static_ejf(make_schedule(code, default_parallel_kind(code)), out.topology, map, opts);
      break;
    case Mode::Dynamic:
      out.schedule = compile_dynamic(make_schedule(code, default_parallel_kind(code)), out.topology, map, opts);
      break;
    case Mode::Serial:
      out.schedule = compile_dynamic(schedule_serial(code), out.topology, map, opts);
      break;
    case Mode::Cyclone: break;
  }
  return out;
}

OpTimes scale_gate_and_shuttle(const OpTimes& t, double factor) {
  OpTimes s = t;
  s.gate_base *= factor;
  s.split *= factor;
  s.move *= factor;
  s.merge *= factor;
  for (auto& [deg, us] : s.junction_cross) us *= factor;
  return s;
}

OpTimes scale_junctions(const OpTimes& t, double factor) {
  OpTimes s = t;
  for (auto& [deg, us] : s.junction_cross) us *= factor;
  return s;
}

std::vector<ReductionRow> sweep_reduction(const CssCode& code, const ExperimentSpec& spec, const Config& cfg,
                                          const std::vector<double>& r_list, unsigned jobs) {
  validate(spec);
  for (double r : r_list) {
    if (!(r >= 0.0 && r <= 95.0)) throw std::invalid_argument("sweep_reduction: r must lie in [0, 95]");
  }
  auto rows = detail::parallel_map(r_list.size(), jobs, [&](std::size_t i) {
    Config c = cfg;
    c.times = scale_gate_and_shuttle(cfg.times, 1.0 - r_list[i] / 100.0);
    return ReductionRow{r_list[i], run_experiment(code, spec, c).schedule.stats};
  });
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
  return rows;
}

std::vector<JunctionRow> sweep_junction(const CssCode& code, const Config& cfg, const std::vector<double>& reductions,
                                        unsigned jobs) {
  for (double r : reductions) {
    if (!(r >= 0.0 && r <= 100.0)) throw std::invalid_argument("sweep_junction: reduction must lie in [0, 100]");
  }
  ExperimentSpec base;
  base.code = code.name();
  base.layout = Layout::Grid;
  base.mode = Mode::Ejf;
  const double baseline = run_experiment(code, base, cfg).schedule.stats.total_time;

  ExperimentSpec mesh = base;
  mesh.layout = Layout::Mesh;
  mesh.mode = Mode::Dynamic;
  auto rows = detail::parallel_map(reductions.size(), jobs, [&](std::size_t i) {
    Config c = cfg;
    c.times = scale_junctions(cfg.times, 1.0 - reductions[i] / 100.0);
    return JunctionRow{reductions[i], run_experiment(code, mesh, c).schedule.stats.total_time, baseline};
  });
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.reduction < b.reduction; });
  return rows;
}

std::optional<double> junction_crossover(const std::vector<JunctionRow>& rows) {
  for (const auto& r : rows) {
    if (r.mesh_us <= r.baseline_us) return r.reduction;
  }
  return std::nullopt;
}

std::string reduction_csv_header() { return "r," + stats_csv_header(); }

std::string reduction_csv_row(const std::string& code, const ExperimentSpec& spec, const ReductionRow& row) {
  return detail::format_double(row.r) + "," + stats_csv_row(code, to_string(spec.layout), to_string(spec.mode), row.stats);
}

std::string junction_csv_header() { return "reduction,mesh_us,baseline_us"; }

std::string junction_csv_row(const JunctionRow& row) {
  using detail::format_double;
  return format_double(row.reduction) + "," + format_double(row.mesh_us) + "," + format_double(row.baseline_us);
}

}  // namespace qccd
