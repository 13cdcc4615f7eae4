#include "icq/diagnostics.hpp"

#include <cmath>

#include "icq/fft.hpp"
#include "icq/spectral.hpp"

namespace icq {

double mass(const WaveField& u) { return integral_abs2(u); }

double grad_norm(const WaveField& u) {
  SpectralField c = forward_fft(u);
  const Grid2D& g = u.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double k2 = g.wavenumber(i);
    for (int j = 0; j < g.n; ++j) {
      double k1 = g.wavenumber(j);
      acc += (k1 * k1 + k2 * k2) *
             std::norm(c.c[static_cast<std::size_t>(i) * g.n + j]);
    }
  }
  return std::sqrt(acc / (4.0 * g.L * g.L));
}

double energy(const WaveField& u, const CoefficientField& K1,
              const CoefficientField& K2) {
  double gn = grad_norm(u);
  double pot = 0.0;
  const Grid2D& g = u.grid;
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double r = std::hypot(g.x(j), x2);
      double a2 = std::norm(u.at(i, j));
      pot += (0.25 * K1.value_at(r) + K2.value_at(r) * a2 / 6.0) * a2 * a2;
    }
  }
  return 0.5 * gn * gn + pot * g.cell_area();
}

double dilation_A(const WaveField& u) {
  SpectralField c = forward_fft(u);
  WaveField d1 = inverse_with_multiplier(
      c, [](double k1, double) { return cplx(0.0, k1); });
  WaveField d2 = inverse_with_multiplier(
      c, [](double, double k2) { return cplx(0.0, k2); });
  const Grid2D& g = u.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double x1 = g.x(j);
      cplx rad = x1 * d1.at(i, j) + x2 * d2.at(i, j);
      acc += std::imag(std::conj(u.at(i, j)) * rad);
    }
  }
  return acc * g.cell_area();
}

double variance(const WaveField& u) {
  const Grid2D& g = u.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double x1 = g.x(j);
      acc += (x1 * x1 + x2 * x2) * std::norm(u.at(i, j));
    }
  }
  return acc * g.cell_area();
}

double potential_V(const WaveField& u, const CoefficientField& K1,
                   const CoefficientField& K2) {
  const Grid2D& g = u.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double r = std::hypot(g.x(j), x2);
      double a2 = std::norm(u.at(i, j));
      acc += (0.25 * std::abs(K1.value_at(r)) +
              std::abs(K2.value_at(r)) * a2 / 6.0) *
             a2 * a2;
    }
  }
  return acc * g.cell_area();
}

double h_theta_norm(const WaveField& u, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("h_theta_norm: order must be 1 or 2");
  double base = l2_norm(
      fractional_derivative(u, static_cast<double>(order), FracKind::inhomogeneous));
  double ang = l2_norm(
      fractional_derivative(angular_derivative(u), 1.0, FracKind::inhomogeneous));
  return base + ang;
}

double boundary_mass_fraction(const WaveField& u, double radius_factor) {
  const Grid2D& g = u.grid;
  double R = radius_factor * g.L;
  double out = 0.0, total = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double a2 = std::norm(u.at(i, j));
      total += a2;
      if (std::hypot(g.x(j), x2) > R) out += a2;
    }
  }
  return total > 0.0 ? out / total : 0.0;
}

std::array<WaveField, 2> galilean_J(const WaveField& u, double t) {
  SpectralField c = forward_fft(u);
  WaveField d1 = inverse_with_multiplier(
      c, [](double k1, double) { return cplx(0.0, k1); });
  WaveField d2 = inverse_with_multiplier(
      c, [](double, double k2) { return cplx(0.0, k2); });
  const Grid2D& g = u.grid;
  WaveField J1(g), J2(g);
  cplx tw(0.0, 2.0 * t);
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double x1 = g.x(j);
      J1.at(i, j) = x1 * u.at(i, j) + tw * d1.at(i, j);
      J2.at(i, j) = x2 * u.at(i, j) + tw * d2.at(i, j);
    }
  }
  return {std::move(J1), std::move(J2)};
}

double galilean_J_norm_sq(const WaveField& u, double t) {
  auto J = galilean_J(u, t);
  return integral_abs2(J[0]) + integral_abs2(J[1]);
}

double scattering_correlation_H(const WaveField& u, const WaveField& u_plus) {
  if (!(u.grid == u_plus.grid))
    throw std::invalid_argument("scattering_correlation_H: grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i)
    acc += std::imag(u.v[i] * std::conj(u_plus.v[i]));
  return -acc * u.grid.cell_area();
}

double virial_rhs(const WaveField& u, const CoefficientField& K1,
                  const CoefficientField& K2) {
  const Grid2D& g = u.grid;
  double quartic = 0.0, sextic = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double r = std::hypot(g.x(j), x2);
      double a2 = std::norm(u.at(i, j));
      quartic += K1.radial_dot_at(r) * a2 * a2;
      sextic += (2.0 * K2.value_at(r) - K2.radial_dot_at(r)) * a2 * a2 * a2;
    }
  }
  quartic *= g.cell_area();
  sextic *= g.cell_area();
  return 4.0 * energy(u, K1, K2) - 0.5 * quartic + sextic / 3.0;
}

double besov_angular_norm(const WaveField& u, const PolarGrid& pg, double r,
                          double s) {
  double acc = 0.0;
  for (double N : dyadic_levels(u.grid)) {
    LittlewoodPaleyResult band = littlewood_paley(u, N);
    if (band.beyond_nyquist) continue;
    double nn = mixed_norm(band.band, pg, r, 2.0);
    acc += std::pow(N, 2.0 * s) * nn * nn;
  }
  return std::sqrt(acc);
}

DiagnosticsRecord compute_record(const WaveField& u, double t,
                                 const CoefficientField& K1,
                                 const CoefficientField& K2) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.mass = mass(u);
  rec.energy = energy(u, K1, K2);
  rec.dilation_A = dilation_A(u);
  rec.variance = variance(u);
  rec.potential_V = potential_V(u, K1, K2);
  rec.grad_norm = grad_norm(u);
  rec.h_theta_11 = h_theta_norm(u, 1);
  rec.tail_fraction = tail_energy_fraction(u);
  rec.boundary_mass_fraction = boundary_mass_fraction(u);
  return rec;
}

bool StrichartzPair::admissible() const {
  if (q < 2.0 || r < 2.0) return false;
  if (q == 2.0 && std::isinf(r)) return false;
  double lhs = (std::isinf(q) ? 0.0 : 1.0 / q) + (std::isinf(r) ? 0.0 : 1.0 / r);
  return std::abs(lhs - 0.5) < 1e-12;
}

bool StrichartzPair::in_triangle() const {
  if (std::isinf(q) && r == 2.0) return true;
  if (q < 2.0 || std::isinf(q) || r <= 2.0 || std::isinf(r)) return false;
  double iq = 1.0 / q, ir = 1.0 / r;
  return 0.5 - ir < iq && iq < 1.5 * (0.5 - ir);
}

}  // namespace icq
