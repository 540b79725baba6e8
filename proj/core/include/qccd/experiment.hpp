#ifndef QCCD_EXPERIMENT_HPP
#define QCCD_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qccd/codes.hpp"
#include "qccd/compiler.hpp"
#include "qccd/cyclone.hpp"
#include "qccd/hardware.hpp"
#include "qccd/noise.hpp"

namespace qccd {

/// Global run configuration (JSON keys: op_times, coherence_fit, swap_policy, seed, ionswap_s).
struct Config {
  OpTimes times;
  CoherenceFit coherence_fit = CoherenceFit::LogLog;
  SwapPolicy swap = SwapPolicy::GateSwap;
  std::uint64_t seed = 0;
  std::optional<double> ionswap_s;
};

Config config_from_json(const nlohmann::json& j);
Config load_config(const std::filesystem::path& path);
nlohmann::json to_json(const Config& c);

enum class Layout { Grid, AltGrid, Mesh, Ring };
enum class Mode { Ejf, Dynamic, Cyclone, Serial };

std::string to_string(Layout l);
std::string to_string(Mode m);
Layout parse_layout(const std::string& text);
Mode parse_mode(const std::string& text);

struct ExperimentSpec {
  std::string code = "hgp225";
  Layout layout = Layout::Grid;
  Mode mode = Mode::Ejf;
  std::optional<std::size_t> traps;      // ring size; default max(m_x, m_z)
  std::optional<std::size_t> capacity;   // default 5 off-ring, minimum feasible on a ring
  bool tight = false;                    // ring capacity ceil(n/x) + ceil(m/x)
};

/// Throws std::invalid_argument ("incompatible layout/mode: ...") unless cyclone
/// and the ring go together and the mesh runs in dynamic mode.
void validate(const ExperimentSpec& spec);

constexpr std::size_t kDefaultCapacity = 5;

struct ExperimentResult {
  std::string code;
  ExperimentSpec spec;
  CompiledSchedule schedule;
  Topology topology;
  std::size_t traps = 0;
  std::size_t ancillas = 0;
  std::optional<double> bound;   // Cyclone only
};

ExperimentResult run_experiment(const CssCode& code, const ExperimentSpec& spec, const Config& cfg);

/// Gate, split, move, merge and junction times multiplied by `factor`.
OpTimes scale_gate_and_shuttle(const OpTimes& t, double factor);
/// Junction crossing times multiplied by `factor`.
OpTimes scale_junctions(const OpTimes& t, double factor);

struct ReductionRow {
  double r = 0.0;   // percent
  ExecStats stats;
};

/// One run per r in percent, r in [0, 95]. Rows sorted by r.
std::vector<ReductionRow> sweep_reduction(const CssCode& code, const ExperimentSpec& spec, const Config& cfg,
                                          const std::vector<double>& r_list, unsigned jobs = 1);

struct JunctionRow {
  double reduction = 0.0;   // percent
  double mesh_us = 0.0;
  double baseline_us = 0.0;
};

/// Mesh (dynamic) with junction times scaled by (1 - reduction) against the
/// grid EJF baseline at default times. Rows sorted by reduction.
std::vector<JunctionRow> sweep_junction(const CssCode& code, const Config& cfg,
                                        const std::vector<double>& reductions, unsigned jobs = 1);

/// First reduction at which the mesh is no slower than the baseline.
std::optional<double> junction_crossover(const std::vector<JunctionRow>& rows);

std::string reduction_csv_header();
std::string reduction_csv_row(const std::string& code, const ExperimentSpec& spec, const ReductionRow& row);
std::string junction_csv_header();
std::string junction_csv_row(const JunctionRow& row);

}  // namespace qccd

#endif  // QCCD_EXPERIMENT_HPP
