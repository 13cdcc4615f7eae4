#pragma once

#include <nlohmann/json.hpp>

#include "icq/config.hpp"
#include "icq/diagnostics.hpp"
#include "icq/evolve.hpp"

namespace icq {

/// Everything a scenario produces: the diagnostic time series, a structured
/// verdict document, and (for scattering) the extracted asymptotic state.
struct RunResult {
  std::vector<DiagnosticsRecord> diagnostics;
  nlohmann::json verdict;
  bool passed = false;
  bool has_phi_plus = false;
  WaveField phi_plus;
  Trajectory trajectory;  // snapshots kept only where a consumer needs them
};

/// Least-squares fit of log(v) against log(t) over t in [t_lo, t_hi].
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of log residuals
  int points = 0;
};
LogLogFit loglog_fit(const std::vector<double>& t, const std::vector<double>& v,
                     double t_lo, double t_hi);

RunResult scattering_run(const RunConfig& cfg);
RunResult blowup_run(const RunConfig& cfg);
RunResult decay_run(const RunConfig& cfg);
RunResult nonscattering_probe(const RunConfig& cfg);

/// Dispatch on cfg.scenario.kind.
RunResult run_scenario(const RunConfig& cfg);

}  // namespace icq
