#pragma once

#include <vector>

#include "icq/grid.hpp"

namespace icq {

/// Polar quadrature grid on the disk of radius rho_max: Gauss-Legendre in
/// rho (weights carry the rho drho measure), uniform theta nodes.
struct PolarGrid {
  int n_rho = 0;
  double rho_max = 0.0;
  int n_theta = 0;
  std::vector<double> rho;     // radial nodes
  std::vector<double> w_rho;   // weights for int g(rho) rho drho = sum w g
  std::vector<double> theta;   // uniform nodes, spacing 2pi/n_theta

  static PolarGrid make(int n_rho, double rho_max, int n_theta);
  double dtheta() const;
};

/// Samples of f at the polar nodes, row-major (n_rho rows of n_theta).
struct PolarSamples {
  int n_rho = 0;
  int n_theta = 0;
  std::vector<cplx> v;
  cplx& at(int ir, int it) { return v[static_cast<std::size_t>(ir) * n_theta + it]; }
  const cplx& at(int ir, int it) const {
    return v[static_cast<std::size_t>(ir) * n_theta + it];
  }
};

/// Bicubic (Catmull-Rom) resampling of the Cartesian field.
PolarSamples to_polar(const WaveField& f, const PolarGrid& pg);

/// Exact trigonometric evaluation, O(n^2) per node. Oracle for n <= 64.
PolarSamples to_polar_fourier(const WaveField& f, const PolarGrid& pg);

/// Bicubic point evaluation (periodic extension of the grid).
cplx interpolate_bicubic(const WaveField& f, double x1, double x2);

/// || f ||_{L^p_rho L^q_theta}: inner L^q over theta per radius, outer L^p
/// against the rho drho measure. p or q may be infinity.
double mixed_norm(const PolarSamples& s, const PolarGrid& pg, double p_rho,
                  double q_theta);
double mixed_norm(const WaveField& f, const PolarGrid& pg, double p_rho,
                  double q_theta);

}  // namespace icq
