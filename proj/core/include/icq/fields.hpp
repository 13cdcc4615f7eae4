#pragma once

#include <limits>

#include "icq/grid.hpp"

namespace icq {

/// Capped power-law coefficient K(x) = sign * kappa * min(|x|, cap)^b,
/// with x.grad(K) available in closed form (never differenced).
struct CoefficientField {
  double b = 0.0;
  double kappa = 0.0;  // 0 only via zero()
  int sign = +1;       // +1 defocusing, -1 focusing
  double cap_radius = std::numeric_limits<double>::infinity();

  static CoefficientField power_law(double b, double kappa, int sign,
                                    double cap_radius);
  static CoefficientField zero();

  bool is_zero() const { return kappa == 0.0; }

  double value_at(double r) const;
  double radial_dot_at(double r) const;  // x . grad K at |x| = r
};

WaveField sample_coefficient(const CoefficientField& K, const Grid2D& g);
WaveField radial_gradient_dot(const CoefficientField& K, const Grid2D& g);

/// Pointwise rigidity inequalities -x.grad(K1) <= a K1 and
/// 2 K2 - x.grad(K2) <= a K2, sampled on log-spaced radii.
struct RigidityReport {
  double alpha = 0.0;
  bool passed = false;
  bool passed_K1 = false, passed_K2 = false;
  double min_margin_K1 = 0.0, min_margin_K2 = 0.0;
  double worst_r_K1 = 0.0, worst_r_K2 = 0.0;
};
RigidityReport rigidity_check(const CoefficientField& K1,
                              const CoefficientField& K2, double alpha,
                              double r_min, double r_max, int samples = 512);
RigidityReport rigidity_check(const CoefficientField& K1,
                              const CoefficientField& K2, double alpha,
                              const Grid2D& g);

/// Empirical constants sup_r |x|^{j-b} |d^j K| for j = 0, 1, 2.
struct GrowthReport {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  bool finite = false;
  bool cap_kink = false;  // derivative jump at the cap radius
};
GrowthReport growth_condition_check(const CoefficientField& K, const Grid2D& g);

}  // namespace icq
