#include "icq/spectral.hpp"

#include <cmath>
#include <numbers>

namespace icq {

WaveField spectral_derivative(const WaveField& f, int axis) {
  if (axis != 1 && axis != 2)
    throw std::invalid_argument("spectral_derivative: axis must be 1 or 2");
  if (axis == 1)
    return apply_multiplier(f, [](double k1, double) { return cplx(0.0, k1); });
  return apply_multiplier(f, [](double, double k2) { return cplx(0.0, k2); });
}

WaveField fractional_derivative(const WaveField& f, double s, FracKind kind) {
  if (s < 0.0)
    throw std::invalid_argument("fractional_derivative: s must be >= 0");
  if (s == 0.0) return f;
  if (kind == FracKind::homogeneous)
    return apply_multiplier(f, [s](double k1, double k2) {
      double kk = k1 * k1 + k2 * k2;
      return cplx(kk > 0.0 ? std::pow(kk, 0.5 * s) : 0.0, 0.0);
    });
  return apply_multiplier(f, [s](double k1, double k2) {
    return cplx(std::pow(1.0 + k1 * k1 + k2 * k2, 0.5 * s), 0.0);
  });
}

WaveField angular_derivative(const WaveField& f) {
  SpectralField fh = forward_fft(f);
  WaveField d1 = inverse_with_multiplier(
      fh, [](double k1, double) { return cplx(0.0, k1); });
  WaveField d2 = inverse_with_multiplier(
      fh, [](double, double k2) { return cplx(0.0, k2); });
  const Grid2D& g = f.grid;
  WaveField out(g);
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      double x1 = g.x(j);
      out.at(i, j) = x1 * d2.at(i, j) - x2 * d1.at(i, j);
    }
  }
  return out;
}

double lp_chi(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  double c = std::cos(0.5 * std::numbers::pi * (r - 1.0));
  return c * c;
}

double lp_bump(double absk, double N) {
  if (N <= 1.0) return lp_chi(absk);
  return lp_chi(absk / N) - lp_chi(2.0 * absk / N);
}

std::vector<double> dyadic_levels(const Grid2D& g) {
  double corner = std::numbers::sqrt2 * g.kmax();
  std::vector<double> levels{1.0};
  double N = 1.0;
  while (N < corner) {
    N *= 2.0;
    levels.push_back(N);
  }
  return levels;
}

LittlewoodPaleyResult littlewood_paley(const WaveField& f, double N) {
  if (N < 1.0 || std::log2(N) != std::floor(std::log2(N)))
    throw std::invalid_argument("littlewood_paley: N must be dyadic >= 1");
  LittlewoodPaleyResult res;
  double corner = std::numbers::sqrt2 * f.grid.kmax();
  if (N > 1.0 && N / 2.0 >= corner) {
    res.band = WaveField(f.grid);
    res.beyond_nyquist = true;
    return res;
  }
  res.band = apply_multiplier(f, [N](double k1, double k2) {
    return cplx(lp_bump(std::hypot(k1, k2), N), 0.0);
  });
  return res;
}

WaveField dealias(const WaveField& f) {
  double kc = 2.0 / 3.0 * f.grid.kmax();
  return apply_multiplier(f, [kc](double k1, double k2) {
    return cplx(std::abs(k1) <= kc && std::abs(k2) <= kc ? 1.0 : 0.0, 0.0);
  });
}

double tail_energy_fraction(const WaveField& f) {
  SpectralField fh = forward_fft(f);
  const Grid2D& g = f.grid;
  double kc = 0.5 * g.kmax();
  double tail = 0.0, total = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double k2 = g.wavenumber(i);
    for (int j = 0; j < g.n; ++j) {
      double k1 = g.wavenumber(j);
      double e = std::norm(fh.c[static_cast<std::size_t>(i) * g.n + j]);
      total += e;
      if (std::hypot(k1, k2) > kc) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace icq
