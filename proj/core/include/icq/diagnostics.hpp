#pragma once

#include <array>

#include "icq/fields.hpp"
#include "icq/grid.hpp"
#include "icq/polar.hpp"

namespace icq {

/// One time slice of every monitored functional. Serializes to one CSV row.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double dilation_A = 0.0;
  double variance = 0.0;
  double potential_V = 0.0;
  double grad_norm = 0.0;
  double h_theta_11 = 0.0;
  double tail_fraction = 0.0;
  double boundary_mass_fraction = 0.0;
};

double mass(const WaveField& u);
double energy(const WaveField& u, const CoefficientField& K1,
              const CoefficientField& K2);
double grad_norm(const WaveField& u);

/// A(t) = Im int conj(u) (x.grad) u dx.
double dilation_A(const WaveField& u);

/// ||x u||_{L2}^2.
double variance(const WaveField& u);

/// V(u) = 1/4 int |K1||u|^4 + 1/6 int |K2||u|^6 (decay functional; takes
/// the field magnitudes so defocusing sign conventions do not flip it).
double potential_V(const WaveField& u, const CoefficientField& K1,
                   const CoefficientField& K2);

/// ||u||_{H^order} + ||d_theta u||_{H^1}, both spectral.
double h_theta_norm(const WaveField& u, int order = 1);

/// Mass fraction outside |x| > radius_factor * L.
double boundary_mass_fraction(const WaveField& u, double radius_factor = 0.8);

/// J = x + 2it grad, componentwise.
std::array<WaveField, 2> galilean_J(const WaveField& u, double t);
double galilean_J_norm_sq(const WaveField& u, double t);

/// H = -Im int u conj(u_plus) dx.
double scattering_correlation_H(const WaveField& u, const WaveField& u_plus);

/// Right-hand side of dA/dt: 4E - 1/2 int (x.grad K1)|u|^4
///                              + 1/3 int (2K2 - x.grad K2)|u|^6.
double virial_rhs(const WaveField& u, const CoefficientField& K1,
                  const CoefficientField& K2);

/// Besov-type angular norm (sum_N N^{2s} ||P_N u||^2_{L^r_rho L^2_theta})^{1/2}.
double besov_angular_norm(const WaveField& u, const PolarGrid& pg, double r,
                          double s);

DiagnosticsRecord compute_record(const WaveField& u, double t,
                                 const CoefficientField& K1,
                                 const CoefficientField& K2);

/// Extended/admissible Strichartz exponent pairs.
struct StrichartzPair {
  double q = 0.0, r = 0.0;
  bool admissible() const;     // 1/q + 1/r = 1/2, (q,r) != (2,inf)
  bool in_triangle() const;    // 1/2 - 1/r < 1/q < 3/2 (1/2 - 1/r), 2<=q<inf
  double s() const { return 2.0 * (1.0 / q + 1.0 / r - 0.5); }
};

}  // namespace icq
