#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "icq/diagnostics.hpp"
#include "icq/evolve.hpp"
#include "icq/grid.hpp"

namespace icq {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { scattering, blowup, decay, nonscattering };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

/// Named initial-data family. Amplitude is either explicit or solved for a
/// target H_theta^{1,1} norm (exactly one of the two).
struct InitialData {
  std::string family = "gaussian";  // gaussian | chirped_gaussian | harmonic
  double sigma = 1.0;               // envelope exp(-|x|^2 / (2 sigma^2))
  double amplitude = 1.0;
  double h_theta_target = 0.0;  // > 0: rescale so ||phi||_{H_theta^{1,1}} = target
  double chirp = 0.0;           // phase exp(-i chirp |x|^2)
  int angular_mode = 0;         // factor (x1 + i x2)^m / |x|^m sense: e^{im theta}

  WaveField build(const Grid2D& g) const;
};

struct ScenarioSettings {
  ScenarioKind kind = ScenarioKind::scattering;
  InitialData initial;
  // scattering
  double delta_small = 0.05;
  int n_checkpoints = 8;
  double cauchy_tol_factor = 1e-3;
  // blowup
  double alpha = 0.0;
  double bound_tolerance_frac = 0.01;  // fraction of ||x phi||^2
  // decay
  double c_margin = 2.0;
  double t_start = 1.0;
  // nonscattering
  double annulus_delta = 0.05;
  double annulus_k = 20.0;
  double t_min = 1.0;
  double t_max = 2.0;
};

struct OutputSettings {
  std::string directory = "out";
  int checkpoint_stride = 0;  // 0 = no intermediate checkpoints
  bool emit_plots_data = false;
};

struct RunConfig {
  int schema_version = 1;
  std::uint64_t seed = 0;
  Grid2D grid;
  CoefficientField K1, K2;
  EvolveConfig evolve;  // K1/K2 copied in
  ScenarioSettings scenario;
  OutputSettings output;

  /// Strict parse: unknown keys anywhere are a ValidationError naming them.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
  void validate() const;  // cross-section constraints (scenario preconditions)
};

/// Fixed-column CSV: t, mass, energy, dilation_A, variance, potential_V,
/// grad_norm, h_theta_11, tail_fraction, boundary_mass_fraction; 17
/// significant digits; header row always present.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& text);

}  // namespace icq
