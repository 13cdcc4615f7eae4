#pragma once

#include <vector>

#include "icq/fft.hpp"
#include "icq/grid.hpp"

namespace icq {

enum class FracKind { homogeneous, inhomogeneous };

/// d/dx_axis via the i*k multiplier. axis is 1 or 2.
WaveField spectral_derivative(const WaveField& f, int axis);

/// D^s = |k|^s (homogeneous) or Lambda^s = (1+|k|^2)^{s/2} (inhomogeneous).
WaveField fractional_derivative(const WaveField& f, double s, FracKind kind);

/// d_theta = x1 d2 - x2 d1: two spectral derivatives, pointwise coordinates.
WaveField angular_derivative(const WaveField& f);

/// Dyadic Littlewood-Paley bands built from a raised-cosine cutoff chi:
/// beta_1 = chi(|k|), beta_N = chi(|k|/N) - chi(2|k|/N), so the telescoping
/// sum over available bands is exactly 1 up to the covering level.
struct DyadicBand {
  double N = 1.0;
  bool beyond_nyquist = false;
};

double lp_chi(double r);               // 1 on [0,1], raised cosine on [1,2], 0 after
double lp_bump(double absk, double N);  // beta_N(|k|)

/// Dyadic levels 1, 2, 4, ... covering every grid frequency (incl. corners).
std::vector<double> dyadic_levels(const Grid2D& g);

struct LittlewoodPaleyResult {
  WaveField band;
  bool beyond_nyquist = false;  // N/2 above the largest grid frequency
};
LittlewoodPaleyResult littlewood_paley(const WaveField& f, double N);

/// 2/3-rule dealias mask (optional fallback for nonlinear steps).
WaveField dealias(const WaveField& f);

/// Energy fraction carried by the top octave |k| > kmax/2.
double tail_energy_fraction(const WaveField& f);

}  // namespace icq
