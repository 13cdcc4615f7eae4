#pragma once

#include <functional>
#include <vector>

#include "icq/fields.hpp"
#include "icq/grid.hpp"

namespace icq {

struct EvolveConfig {
  double dt = 1e-3;
  double T = 1.0;
  CoefficientField K1 = CoefficientField::zero();
  CoefficientField K2 = CoefficientField::zero();
  double blowup_gradient_factor = 50.0;  // threshold = factor * ||grad phi||
  double tail_energy_threshold = 0.01;   // top-octave spectral fraction
  int record_stride = 1;
  bool use_dealias = false;

  void validate() const;
};

enum class Termination { completed, blowup_detected, aliasing_detected };

struct Trajectory {
  std::vector<double> times;             // recorded times (record stride)
  std::vector<double> snapshot_times;    // stored-field times
  std::vector<WaveField> snapshots;      // stored at snapshot stride
  Termination termination = Termination::completed;
  double t_end = 0.0;
  double max_mass_drift = 0.0;  // relative, tracked every step
};

/// e^{itD}: exact frequency-space multiplication by e^{-it|k|^2}.
WaveField free_propagate(const WaveField& u, double t);

/// Exact potential substep: u *= exp(-i dt (K1|u|^2 + K2|u|^4)), with K
/// pre-sampled on the grid (real-valued). Pointwise modulus preserved.
WaveField nonlinear_phase_step(const WaveField& u, double dt,
                               const WaveField& K1s, const WaveField& K2s);
WaveField nonlinear_phase_step(const WaveField& u, double dt,
                               const CoefficientField& K1,
                               const CoefficientField& K2);

/// Strang step: half free, full phase, half free. Globally O(dt^2).
WaveField strang_step(const WaveField& u, double dt, const EvolveConfig& cfg);

/// Called at every recorded step (including t = 0 and the final state).
using EvolveObserver = std::function<void(double t, const WaveField& u)>;

/// Iterate strang_step from phi, recording every record_stride steps.
/// Stops early on gradient blowup or spectral-tail aliasing.
/// snapshot_stride: store fields every that many recorded points
/// (0 = every recorded point, -1 = none but first and last).
Trajectory evolve(const WaveField& phi, const EvolveConfig& cfg,
                  const EvolveObserver& observer = {},
                  int snapshot_stride = 0);

/// Relative L2 residual of the integral-equation form of the flow,
/// with the time integral by trapezoid over stored snapshots.
double duhamel_residual(const Trajectory& traj, const EvolveConfig& cfg);

}  // namespace icq
