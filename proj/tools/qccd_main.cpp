// qccd: command line driver for code construction, compilation and sweeps.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qccd/binary_matrix.hpp"
#include "qccd/codes.hpp"
#include "qccd/compiler.hpp"
#include "qccd/cyclone.hpp"
#include "qccd/experiment.hpp"
#include "qccd/hardware.hpp"
#include "qccd/noise.hpp"
#include "qccd/schedule.hpp"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

struct RunArgs {
  std::string code = "hgp225";
  std::string layout = "grid";
  std::string mode = "ejf";
  std::optional<std::size_t> traps;
  std::string capacity;
  std::string swap;
  std::optional<double> ionswap_s;
  bool trace = false;
  std::vector<double> noise_p;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "Config JSON (op_times, coherence_fit, swap_policy, seed)");
  sub->add_option("--out", c.out_dir, "Output directory (stdout if omitted)");
  sub->add_option("--seed", c.seed, "RNG seed for random code specs");
}

qccd::Config load(const Common& c) {
  qccd::Config cfg = c.config_path.empty() ? qccd::Config{} : qccd::load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

// Writes to <out>/<name> when --out is set, otherwise to stdout.
void emit(const Common& c, const std::string& name, const std::string& text) {
  if (c.out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(c.out_dir);
  const fs::path path = fs::path(c.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cerr << "wrote " << path.string() << '\n';
}

std::string safe_name(std::string s) {
  for (auto& ch : s) {
    if (ch == '/' || ch == ':' || ch == ',' || ch == ' ') ch = '-';
  }
  return s;
}

std::optional<std::size_t> parse_capacity(const std::string& text, bool& tight) {
  tight = false;
  if (text.empty()) return std::nullopt;
  if (text == "tight") {
    tight = true;
    return std::nullopt;
  }
  std::size_t pos = 0;
  const unsigned long v = std::stoul(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("capacity must be an integer or 'tight'");
  return static_cast<std::size_t>(v);
}

qccd::ExperimentSpec make_spec(const RunArgs& a) {
  qccd::ExperimentSpec spec;
  spec.code = a.code;
  spec.layout = qccd::parse_layout(a.layout);
  spec.mode = qccd::parse_mode(a.mode);
  spec.traps = a.traps;
  spec.capacity = parse_capacity(a.capacity, spec.tight);
  qccd::validate(spec);
  return spec;
}

void apply_swap(const RunArgs& a, qccd::Config& cfg) {
  if (!a.swap.empty()) cfg.swap = qccd::parse_swap_policy(a.swap);
  if (a.ionswap_s) cfg.ionswap_s = a.ionswap_s;
}

std::string stats_text(const qccd::ExperimentResult& r) {
  return qccd::stats_csv_header() + "\n" +
         qccd::stats_csv_row(r.code, qccd::to_string(r.spec.layout), qccd::to_string(r.spec.mode), r.schedule.stats) +
         "\n";
}

std::string bound_text(const qccd::ExperimentResult& r) {
  nlohmann::json j{{"code", r.code},
                   {"traps", r.traps},
                   {"total_us", r.schedule.stats.total_time},
                   {"bound_us", r.bound ? nlohmann::json(*r.bound) : nlohmann::json(nullptr)},
                   {"spacetime", qccd::spacetime_cost(r.schedule.stats, r.traps, r.ancillas)}};
  return j.dump(2) + "\n";
}

std::string trace_text(const qccd::ExperimentResult& r) {
  std::ostringstream os;
  qccd::write_trace_jsonl(r.schedule, os);
  return os.str();
}

std::string run_prefix(const qccd::ExperimentResult& r) {
  return safe_name(r.code) + "_" + qccd::to_string(r.spec.layout) + "_" + qccd::to_string(r.spec.mode);
}

void emit_noise(const Common& c, const qccd::ExperimentResult& r, const std::vector<double>& ps,
                qccd::CoherenceFit fit) {
  const auto layout = qccd::to_string(r.spec.layout);
  const auto mode = qccd::to_string(r.spec.mode);
  for (double p : ps) {
    const auto j = qccd::export_noise_model(r.code, layout, mode, r.schedule.stats, p, fit);
    emit(c, qccd::noise_file_name(r.code, layout, mode, p), j.dump(2) + "\n");
  }
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(text)) {
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw std::invalid_argument("trap counts must be positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void print_error(const std::string& command, const std::string& type, const std::string& message) {
  nlohmann::json err{{"error", {{"command", command}, {"type", type}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QCCD trapped-ion syndrome extraction compiler and simulator"};
  app.require_subcommand(1);

  Common common;
  RunArgs run;
  std::string schedule_kind;
  std::string sweep_list;
  std::string sweep_capacity = "tight";
  unsigned jobs = 1;
  double p_base = 1e-3;

  // build-code
  auto* build_code = app.add_subcommand("build-code", "Construct a code and write its check matrices");
  add_common(build_code, common);
  build_code->add_option("--code", run.code, "Code spec (preset, hgp:a.pcm[,b.pcm], bb:144, random-hgp:RxC)");

  // emit-schedule
  auto* emit_schedule = app.add_subcommand("emit-schedule", "Write a syndrome extraction schedule as JSON");
  add_common(emit_schedule, common);
  emit_schedule->add_option("--code", run.code, "Code spec");
  emit_schedule->add_option("--kind", schedule_kind, "edge | xz | serial (default by family)");

  // emit-topology
  auto* emit_topology = app.add_subcommand("emit-topology", "Write a device topology as JSON");
  add_common(emit_topology, common);
  emit_topology->add_option("--code", run.code, "Code spec (sets the data qubit count)");
  emit_topology->add_option("--layout", run.layout, "grid | altgrid | mesh | ring");
  emit_topology->add_option("--traps", run.traps, "Ring size");
  emit_topology->add_option("--capacity", run.capacity, "Ions per trap");

  // compile (alias run)
  auto* compile = app.add_subcommand("compile", "Compile one experiment and write stats");
  compile->alias("run");
  add_common(compile, common);
  compile->add_option("--code", run.code, "Code spec");
  compile->add_option("--layout", run.layout, "grid | altgrid | mesh | ring");
  compile->add_option("--mode", run.mode, "ejf | dynamic | cyclone | serial");
  compile->add_option("--traps", run.traps, "Ring size");
  compile->add_option("--capacity", run.capacity, "Ions per trap, or 'tight' on a ring");
  compile->add_option("--swap", run.swap, "gate | ion");
  compile->add_option("--ionswap-s", run.ionswap_s, "IonSwap per-step constant in us");
  compile->add_flag("--trace", run.trace, "Also write the event trace (JSONL)");
  compile->add_option("--noise", run.noise_p, "Also export noise records for these p_base values");

  // cyclone
  std::string cyclone_emit = "stats";
  auto* cyclone = app.add_subcommand("cyclone", "Compile a Cyclone ring");
  add_common(cyclone, common);
  cyclone->add_option("--code", run.code, "Code spec");
  cyclone->add_option("--traps", run.traps, "Ring size x");
  cyclone->add_option("--capacity", run.capacity, "Ions per trap, or 'tight'");
  cyclone->add_option("--swap", run.swap, "gate | ion");
  cyclone->add_option("--ionswap-s", run.ionswap_s, "IonSwap per-step constant in us");
  cyclone->add_option("--emit", cyclone_emit, "trace | stats | bound")
      ->check(CLI::IsMember({"trace", "stats", "bound"}));

  // sweep-traps
  auto* sweep_traps = app.add_subcommand("sweep-traps", "Cyclone total time over ring sizes");
  add_common(sweep_traps, common);
  sweep_traps->add_option("--code", run.code, "Code spec");
  sweep_traps->add_option("--x", sweep_list, "Comma-separated ring sizes")->required();
  sweep_traps->add_option("--capacity", sweep_capacity, "Ions per trap, or 'tight'");
  sweep_traps->add_option("--swap", run.swap, "gate | ion");
  sweep_traps->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  // sweep-reduction
  auto* sweep_red = app.add_subcommand("sweep-reduction", "Scale gate and shuttle times by (1 - r)");
  add_common(sweep_red, common);
  sweep_red->add_option("--code", run.code, "Code spec");
  sweep_red->add_option("--layout", run.layout, "grid | altgrid | mesh | ring");
  sweep_red->add_option("--mode", run.mode, "ejf | dynamic | cyclone | serial");
  sweep_red->add_option("--traps", run.traps, "Ring size");
  sweep_red->add_option("--capacity", run.capacity, "Ions per trap, or 'tight' on a ring");
  sweep_red->add_option("--swap", run.swap, "gate | ion");
  sweep_red->add_option("--r", sweep_list, "Comma-separated percentages in [0, 95]")->required();
  sweep_red->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  // sweep-junction
  auto* sweep_jn = app.add_subcommand("sweep-junction", "Mesh with reduced junction times against the grid baseline");
  add_common(sweep_jn, common);
  sweep_jn->add_option("--code", run.code, "Code spec");
  sweep_jn->add_option("--reductions", sweep_list, "Comma-separated percentages in [0, 100]")->required();
  sweep_jn->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  // export-noise
  auto* export_noise = app.add_subcommand("export-noise", "Compile and write a twirled noise record");
  add_common(export_noise, common);
  export_noise->add_option("--code", run.code, "Code spec");
  export_noise->add_option("--layout", run.layout, "grid | altgrid | mesh | ring");
  export_noise->add_option("--mode", run.mode, "ejf | dynamic | cyclone | serial");
  export_noise->add_option("--traps", run.traps, "Ring size");
  export_noise->add_option("--capacity", run.capacity, "Ions per trap, or 'tight' on a ring");
  export_noise->add_option("--p", p_base, "Physical error rate p_base");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    qccd::Config cfg = load(common);

    if (*build_code) {
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      nlohmann::json j{{"name", code.name()},
                       {"family", qccd::to_string(code.family())},
                       {"n", code.n()},
                       {"k", code.k()},
                       {"m_x", code.m_x()},
                       {"m_z", code.m_z()},
                       {"w_max_x", code.w_max_x()},
                       {"w_max_z", code.w_max_z()}};
      const auto base = safe_name(code.name().empty() ? run.code : code.name());
      if (!common.out_dir.empty()) {
        std::ostringstream hx, hz;
        qccd::write_pcm(hx, code.hx());
        qccd::write_pcm(hz, code.hz());
        emit(common, base + "_hx.pcm", hx.str());
        emit(common, base + "_hz.pcm", hz.str());
      }
      emit(common, base + ".json", j.dump(2) + "\n");
    } else if (*emit_schedule) {
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      const auto kind = schedule_kind.empty() ? qccd::default_parallel_kind(code)
                                              : qccd::parse_schedule_kind(schedule_kind);
      const auto sched = qccd::make_schedule(code, kind);
      emit(common, "schedule_" + safe_name(run.code) + "_" + qccd::to_string(kind) + ".json",
           qccd::to_json(sched).dump(2) + "\n");
    } else if (*emit_topology) {
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      bool tight = false;
      const auto cap = parse_capacity(run.capacity, tight);
      const auto layout = qccd::parse_layout(run.layout);
      qccd::Topology topo;
      switch (layout) {
        case qccd::Layout::Grid:
          topo = qccd::build_grid_baseline(code.n(), cap.value_or(qccd::kDefaultCapacity));
          break;
        case qccd::Layout::AltGrid:
          topo = qccd::build_alt_grid(code.n(), cap.value_or(qccd::kDefaultCapacity));
          break;
        case qccd::Layout::Mesh:
          topo = qccd::build_mesh_junction(code.n(), cap.value_or(qccd::kDefaultCapacity));
          break;
        case qccd::Layout::Ring: {
          const std::size_t x = run.traps.value_or(std::max(code.m_x(), code.m_z()));
          std::size_t c = qccd::cyclone_min_capacity(code, x);
          if (tight) c = qccd::tight_capacity(code.n(), code.m(), x);
          if (cap) c = *cap;
          topo = qccd::build_ring(x, c);
          break;
        }
      }
      emit(common, "topology_" + run.layout + "_" + safe_name(run.code) + ".json",
           qccd::to_json(topo).dump(2) + "\n");
    } else if (*compile) {
      apply_swap(run, cfg);
      const auto spec = make_spec(run);
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      const auto r = qccd::run_experiment(code, spec, cfg);
      const auto prefix = run_prefix(r);
      emit(common, "stats_" + prefix + ".csv", stats_text(r));
      if (r.bound) emit(common, "bound_" + prefix + ".json", bound_text(r));
      if (run.trace) emit(common, "trace_" + prefix + ".jsonl", trace_text(r));
      emit_noise(common, r, run.noise_p, cfg.coherence_fit);
    } else if (*cyclone) {
      apply_swap(run, cfg);
      run.layout = "ring";
      run.mode = "cyclone";
      const auto spec = make_spec(run);
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      const auto r = qccd::run_experiment(code, spec, cfg);
      const auto prefix = run_prefix(r) + "_x" + std::to_string(r.traps);
      if (cyclone_emit == "trace") {
        emit(common, "trace_" + prefix + ".jsonl", trace_text(r));
      } else if (cyclone_emit == "bound") {
        emit(common, "bound_" + prefix + ".json", bound_text(r));
      } else {
        emit(common, "stats_" + prefix + ".csv", stats_text(r));
      }
    } else if (*sweep_traps) {
      apply_swap(run, cfg);
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      bool tight = false;
      const auto cap = parse_capacity(sweep_capacity, tight);
      if (!tight && !cap) throw std::invalid_argument("sweep-traps needs --capacity N or tight");
      const qccd::CycloneConfig base{1, 0, cfg.times, cfg.swap, cfg.ionswap_s};
      const auto rows = qccd::sweep_traps(code, parse_size_list(sweep_list), tight, cap.value_or(0), base, jobs);
      std::string text = qccd::trap_sweep_csv_header() + "\n";
      for (const auto& row : rows) text += qccd::trap_sweep_csv_row(row) + "\n";
      emit(common, "sweep_traps_" + safe_name(run.code) + ".csv", text);
    } else if (*sweep_red) {
      apply_swap(run, cfg);
      const auto spec = make_spec(run);
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      const auto rows = qccd::sweep_reduction(code, spec, cfg, parse_double_list(sweep_list), jobs);
      const std::string name = code.name().empty() ? run.code : code.name();
      std::string text = qccd::reduction_csv_header() + "\n";
      for (const auto& row : rows) text += qccd::reduction_csv_row(name, spec, row) + "\n";
      emit(common, "sweep_reduction_" + safe_name(name) + "_" + run.layout + "_" + run.mode + ".csv", text);
    } else if (*sweep_jn) {
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      const auto rows = qccd::sweep_junction(code, cfg, parse_double_list(sweep_list), jobs);
      std::string text = qccd::junction_csv_header() + "\n";
      for (const auto& row : rows) text += qccd::junction_csv_row(row) + "\n";
      emit(common, "sweep_junction_" + safe_name(run.code) + ".csv", text);
      if (const auto x = qccd::junction_crossover(rows)) {
        std::cerr << "crossover at " << *x << "% reduction\n";
      } else {
        std::cerr << "no crossover in the swept range\n";
      }
    } else if (*export_noise) {
      const auto spec = make_spec(run);
      const auto code = qccd::code_from_spec(run.code, cfg.seed);
      const auto r = qccd::run_experiment(code, spec, cfg);
      emit_noise(common, r, {p_base}, cfg.coherence_fit);
    }
  } catch (const std::invalid_argument& e) {
    print_error(command, "invalid_argument", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error(command, "runtime_error", e.what());
    return 1;
  }
  return 0;
}
