#include "qccd/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "engine.hpp"

namespace qccd {

std::string to_string(CoherenceFit f) { return f == CoherenceFit::LogLog ? "loglog" : "loglinear"; }

CoherenceFit parse_coherence_fit(const std::string& text) {
  if (text == "loglog") return CoherenceFit::LogLog;
  if (text == "loglinear") return CoherenceFit::LogLinear;
  throw std::invalid_argument("unknown coherence_fit '" + text + "' (expected loglog or loglinear)");
}

double coherence_from_p(double p, CoherenceFit fit) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("coherence_from_p: p must lie in (0, 1)");
  if (fit == CoherenceFit::LogLog) return 1.0 / (100.0 * p);
  const double t = 100.0 - 90.0 * (std::log10(p) + 4.0);
  if (!(t > 0.0)) throw std::invalid_argument("coherence_from_p: log-linear fit gives T <= 0 for this p");
  return t;
}

void validate(const NoiseParams& np) {
  if (!(np.p_base >= 0.0 && np.p_base <= 1.0)) throw std::invalid_argument("NoiseParams: p_base outside [0, 1]");
  if (!(np.t1 > 0.0) || !(np.t2 > 0.0)) throw std::invalid_argument("NoiseParams: T1 and T2 must be > 0");
  if (np.t2 > 2.0 * np.t1) throw std::invalid_argument("NoiseParams: T2 must not exceed 2 T1");
  if (!(np.t_exec >= 0.0)) throw std::invalid_argument("NoiseParams: t_exec must be >= 0");
}

DepolRates twirl_depolarize(const NoiseParams& np) {
  validate(np);
  const double decay = -std::expm1(-np.t_exec / np.t1);
  const double dephase = -std::expm1(-np.t_exec / np.t2);
  DepolRates r;
  r.px = decay / 4.0;
  r.py = r.px;
  r.pz = std::max(0.0, dephase / 2.0 - decay / 4.0);
  r.p_twirl = r.px + r.py + r.pz;
  r.p_total = np.p_base + r.p_twirl;
  if (r.p_total > 1.0) {
    r.p_total = 1.0;
    r.clamped = true;
  }
  return r;
}

double twirl_linearized(double t, double t1, double t2) { return t / (4.0 * t1) + t / (2.0 * t2); }

nlohmann::json export_noise_model(const std::string& code, const std::string& layout, const std::string& mode,
                                  const ExecStats& stats, double p_base, CoherenceFit fit) {
  if (stats.event_count == 0) throw std::runtime_error("no compiled schedule");
  const double t = coherence_from_p(p_base, fit);
  const NoiseParams np{p_base, t, t, stats.total_time * 1e-6};
  const auto r = twirl_depolarize(np);
  nlohmann::json j;
  j["code"] = code;
  j["layout"] = layout;
  j["mode"] = mode;
  j["t_exec"] = np.t_exec;
  j["p_base"] = p_base;
  j["T1"] = np.t1;
  j["T2"] = np.t2;
  j["px"] = r.px;
  j["py"] = r.py;
  j["pz"] = r.pz;
  j["p_twirl"] = r.p_twirl;
  j["p_total"] = r.p_total;
  j["clamped"] = r.clamped;
  j["coherence_fit"] = to_string(fit);
  return j;
}

std::string noise_file_name(const std::string& code, const std::string& layout, const std::string& mode,
                            double p_base) {
  std::string safe = code;
  for (auto& c : safe) {
    if (c == '/' || c == ':' || c == ',' || c == ' ') c = '-';
  }
  return "noise_" + safe + "_" + layout + "_" + mode + "_" + detail::format_double(p_base) + ".json";
}

}  // namespace qccd
