#ifndef QCCD_NOISE_HPP
#define QCCD_NOISE_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qccd/compiler.hpp"

namespace qccd {

/// Coherence-time fit through (1e-4, 100 s) and (1e-3, 10 s).
enum class CoherenceFit { LogLog, LogLinear };
std::string to_string(CoherenceFit f);
CoherenceFit parse_coherence_fit(const std::string& text);

/// LogLog: T = 1 / (100 p). LogLinear: T = 100 - 90 (log10 p + 4).
/// Throws std::invalid_argument unless 0 < p < 1.
double coherence_from_p(double p, CoherenceFit fit = CoherenceFit::LogLog);

struct NoiseParams {
  double p_base = 0.0;
  double t1 = 1.0;      // s
  double t2 = 1.0;      // s
  double t_exec = 0.0;  // s
};

void validate(const NoiseParams& np);

struct DepolRates {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;
  double p_twirl = 0.0;
  double p_total = 0.0;
  bool clamped = false;   // p_base + p_twirl exceeded 1
};

/// Pauli twirl of amplitude damping (T1) plus dephasing (T2) over t_exec:
/// px = py = (1 - e^{-t/T1}) / 4, pz = (1 - e^{-t/T2}) / 2 - (1 - e^{-t/T1}) / 4.
DepolRates twirl_depolarize(const NoiseParams& np);

/// First-order expansion of p_twirl: t/(4 T1) + t/(2 T2).
double twirl_linearized(double t, double t1, double t2);

/// Noise record for one compiled experiment. Throws std::runtime_error
/// ("no compiled schedule") when the stats hold no events.
nlohmann::json export_noise_model(const std::string& code, const std::string& layout, const std::string& mode,
                                  const ExecStats& stats, double p_base, CoherenceFit fit = CoherenceFit::LogLog);

/// noise_<code>_<layout>_<mode>_<p>.json
std::string noise_file_name(const std::string& code, const std::string& layout, const std::string& mode,
                            double p_base);

}  // namespace qccd

#endif  // QCCD_NOISE_HPP
