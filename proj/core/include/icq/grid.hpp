#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace icq {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L, L)^2 with n samples per axis.
///
/// Sample (i, j) sits at x1 = -L + j*h, x2 = -L + i*h (row index is the
/// x2 direction). Discrete wavenumbers are k_m = (pi/L) * m for integer
/// m in [-n/2, n/2), stored in standard FFT order.
struct Grid2D {
  int n = 0;
  double L = 0.0;
  double h = 0.0;

  static Grid2D make(int n, double L);

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  double x(int j) const { return -L + j * h; }
  double wavenumber(int m) const {
    int mm = m < n / 2 ? m : m - n;
    return std::numbers::pi / L * mm;
  }
  double kmax() const { return std::numbers::pi * n / (2.0 * L); }
  double cell_area() const { return h * h; }

  bool operator==(const Grid2D& o) const { return n == o.n && L == o.L; }
};

/// Complex field sampled on a Grid2D, row-major.
struct WaveField {
  Grid2D grid;
  std::vector<cplx> v;

  WaveField() = default;
  explicit WaveField(const Grid2D& g) : grid(g), v(g.size()) {}

  cplx& at(int i, int j) { return v[static_cast<std::size_t>(i) * grid.n + j]; }
  const cplx& at(int i, int j) const {
    return v[static_cast<std::size_t>(i) * grid.n + j];
  }

  bool finite() const;
};

/// Fourier coefficients of a WaveField in the grid's wavenumber layout.
struct SpectralField {
  Grid2D grid;
  std::vector<cplx> c;

  SpectralField() = default;
  explicit SpectralField(const Grid2D& g) : grid(g), c(g.size()) {}
};

/// Build a field from a pointwise function of (x1, x2).
template <class F>
WaveField sample(const Grid2D& g, F&& f) {
  WaveField out(g);
  for (int i = 0; i < g.n; ++i) {
    double x2 = g.x(i);
    for (int j = 0; j < g.n; ++j) out.at(i, j) = f(g.x(j), x2);
  }
  return out;
}

// Grid quadrature: h^2 * sum.
double integral_abs2(const WaveField& f);
double l2_norm(const WaveField& f);
double lp_norm(const WaveField& f, double p);  // p = inf -> grid max
double max_abs(const WaveField& f);

WaveField operator+(const WaveField& a, const WaveField& b);
WaveField operator-(const WaveField& a, const WaveField& b);
WaveField operator*(cplx s, const WaveField& a);

}  // namespace icq
