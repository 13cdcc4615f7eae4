#include "icq/polar.hpp"

#include <cmath>
#include <numbers>

#include "icq/fft.hpp"

namespace icq {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton on the recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

PolarGrid PolarGrid::make(int n_rho, double rho_max, int n_theta) {
  if (n_rho < 2) throw std::invalid_argument("PolarGrid: n_rho too small");
  if (!(rho_max > 0.0)) throw std::invalid_argument("PolarGrid: rho_max <= 0");
  if (n_theta < 64 || n_theta % 2 != 0)
    throw std::invalid_argument("PolarGrid: n_theta must be even and >= 64");
  PolarGrid pg;
  pg.n_rho = n_rho;
  pg.rho_max = rho_max;
  pg.n_theta = n_theta;
  std::vector<double> x, w;
  gauss_legendre(n_rho, x, w);
  pg.rho.resize(n_rho);
  pg.w_rho.resize(n_rho);
  for (int i = 0; i < n_rho; ++i) {
    double r = 0.5 * rho_max * (x[i] + 1.0);
    pg.rho[i] = r;
    pg.w_rho[i] = 0.5 * rho_max * w[i] * r;  // rho drho measure
  }
  pg.theta.resize(n_theta);
  for (int j = 0; j < n_theta; ++j)
    pg.theta[j] = 2.0 * std::numbers::pi * j / n_theta;
  return pg;
}

double PolarGrid::dtheta() const { return 2.0 * std::numbers::pi / n_theta; }

cplx interpolate_bicubic(const WaveField& f, double x1, double x2) {
  const Grid2D& g = f.grid;
  auto wrap = [&](int idx) { return ((idx % g.n) + g.n) % g.n; };
  double u = (x1 + g.L) / g.h;
  double v = (x2 + g.L) / g.h;
  int j0 = static_cast<int>(std::floor(u));
  int i0 = static_cast<int>(std::floor(v));
  double fu = u - j0, fv = v - i0;

  auto cr = [](double t, double w[4]) {
    // Catmull-Rom weights
    double t2 = t * t, t3 = t2 * t;
    w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
    w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
    w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
    w[3] = 0.5 * (t3 - t2);
  };
  double wu[4], wv[4];
  cr(fu, wu);
  cr(fv, wv);
  cplx acc(0.0, 0.0);
  for (int a = -1; a <= 2; ++a) {
    int row = wrap(i0 + a);
    cplx racc(0.0, 0.0);
    for (int b = -1; b <= 2; ++b)
      racc += wu[b + 1] * f.at(row, wrap(j0 + b));
    acc += wv[a + 1] * racc;
  }
  return acc;
}

PolarSamples to_polar(const WaveField& f, const PolarGrid& pg) {
  if (pg.rho_max > f.grid.L)
    throw std::invalid_argument("to_polar: rho_max exceeds grid half-width");
  PolarSamples s;
  s.n_rho = pg.n_rho;
  s.n_theta = pg.n_theta;
  s.v.resize(static_cast<std::size_t>(pg.n_rho) * pg.n_theta);
  for (int ir = 0; ir < pg.n_rho; ++ir) {
    double r = pg.rho[ir];
    for (int it = 0; it < pg.n_theta; ++it) {
      s.at(ir, it) = interpolate_bicubic(f, r * std::cos(pg.theta[it]),
                                         r * std::sin(pg.theta[it]));
    }
  }
  return s;
}

PolarSamples to_polar_fourier(const WaveField& f, const PolarGrid& pg) {
  if (pg.rho_max > f.grid.L)
    throw std::invalid_argument("to_polar_fourier: rho_max exceeds half-width");
  const Grid2D& g = f.grid;
  if (g.n > 64)
    throw std::invalid_argument("to_polar_fourier: oracle limited to n <= 64");
  SpectralField fh = forward_fft(f);
  PolarSamples s;
  s.n_rho = pg.n_rho;
  s.n_theta = pg.n_theta;
  s.v.resize(static_cast<std::size_t>(pg.n_rho) * pg.n_theta);
  double norm = 1.0 / (g.cell_area() * g.size());
  for (int ir = 0; ir < pg.n_rho; ++ir) {
    for (int it = 0; it < pg.n_theta; ++it) {
      double x1 = pg.rho[ir] * std::cos(pg.theta[it]);
      double x2 = pg.rho[ir] * std::sin(pg.theta[it]);
      cplx acc(0.0, 0.0);
      for (int i = 0; i < g.n; ++i) {
        double k2 = g.wavenumber(i);
        for (int j = 0; j < g.n; ++j) {
          double k1 = g.wavenumber(j);
          // coefficients carry no origin phase; evaluate against x + L
          double ph = k1 * (x1 + g.L) + k2 * (x2 + g.L);
          acc += fh.c[static_cast<std::size_t>(i) * g.n + j] *
                 cplx(std::cos(ph), std::sin(ph));
        }
      }
      s.at(ir, it) = acc * norm;
    }
  }
  return s;
}

double mixed_norm(const PolarSamples& s, const PolarGrid& pg, double p_rho,
                  double q_theta) {
  std::vector<double> ring(pg.n_rho);
  for (int ir = 0; ir < pg.n_rho; ++ir) {
    if (std::isinf(q_theta)) {
      double m = 0.0;
      for (int it = 0; it < pg.n_theta; ++it)
        m = std::max(m, std::abs(s.at(ir, it)));
      ring[ir] = m;
    } else {
      double acc = 0.0;
      for (int it = 0; it < pg.n_theta; ++it)
        acc += std::pow(std::abs(s.at(ir, it)), q_theta);
      ring[ir] = std::pow(acc * pg.dtheta(), 1.0 / q_theta);
    }
  }
  if (std::isinf(p_rho)) {
    double m = 0.0;
    for (double g : ring) m = std::max(m, g);
    return m;
  }
  double acc = 0.0;
  for (int ir = 0; ir < pg.n_rho; ++ir)
    acc += pg.w_rho[ir] * std::pow(ring[ir], p_rho);
  return std::pow(acc, 1.0 / p_rho);
}

double mixed_norm(const WaveField& f, const PolarGrid& pg, double p_rho,
                  double q_theta) {
  return mixed_norm(to_polar(f, pg), pg, p_rho, q_theta);
}

}  // namespace icq
