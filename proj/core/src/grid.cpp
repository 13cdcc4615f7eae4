#include "icq/grid.hpp"

#include <cmath>

namespace icq {

static bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid2D Grid2D::make(int n, double L) {
  if (!is_pow2(n) || n < 16)
    throw std::invalid_argument("Grid2D: n must be a power of two >= 16");
  if (!(L > 0.0)) throw std::invalid_argument("Grid2D: L must be positive");
  Grid2D g;
  g.n = n;
  g.L = L;
  g.h = 2.0 * L / n;
  return g;
}

bool WaveField::finite() const {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double integral_abs2(const WaveField& f) {
  double s = 0.0;
  for (const cplx& z : f.v) s += std::norm(z);
  return s * f.grid.cell_area();
}

double l2_norm(const WaveField& f) { return std::sqrt(integral_abs2(f)); }

double max_abs(const WaveField& f) {
  double m = 0.0;
  for (const cplx& z : f.v) m = std::max(m, std::abs(z));
  return m;
}

double lp_norm(const WaveField& f, double p) {
  if (std::isinf(p)) return max_abs(f);
  double s = 0.0;
  for (const cplx& z : f.v) s += std::pow(std::abs(z), p);
  return std::pow(s * f.grid.cell_area(), 1.0 / p);
}

WaveField operator+(const WaveField& a, const WaveField& b) {
  WaveField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] + b.v[i];
  return out;
}

WaveField operator-(const WaveField& a, const WaveField& b) {
  WaveField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] - b.v[i];
  return out;
}

WaveField operator*(cplx s, const WaveField& a) {
  WaveField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = s * a.v[i];
  return out;
}

}  // namespace icq
