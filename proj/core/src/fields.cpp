#include "icq/fields.hpp"

#include <cmath>

namespace icq {

CoefficientField CoefficientField::power_law(double b, double kappa, int sign,
                                             double cap_radius) {
  if (b < 0.0)
    throw std::invalid_argument("CoefficientField: b must be >= 0");
  if (!(kappa > 0.0))
    throw std::invalid_argument("CoefficientField: kappa must be > 0");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("CoefficientField: sign must be +-1");
  if (!(cap_radius > 0.0))
    throw std::invalid_argument("CoefficientField: cap_radius must be > 0");
  CoefficientField K;
  K.b = b;
  K.kappa = kappa;
  K.sign = sign;
  K.cap_radius = cap_radius;
  return K;
}

CoefficientField CoefficientField::zero() { return CoefficientField{}; }

double CoefficientField::value_at(double r) const {
  if (is_zero()) return 0.0;
  double re = std::min(r, cap_radius);
  return sign * kappa * std::pow(re, b);  // pow(0,0) == 1 gives the b=0 case
}

double CoefficientField::radial_dot_at(double r) const {
  if (is_zero() || b == 0.0 || r >= cap_radius) return 0.0;
  return sign * kappa * b * std::pow(r, b);
}

WaveField sample_coefficient(const CoefficientField& K, const Grid2D& g) {
  return sample(g, [&K](double x1, double x2) {
    return cplx(K.value_at(std::hypot(x1, x2)), 0.0);
  });
}

WaveField radial_gradient_dot(const CoefficientField& K, const Grid2D& g) {
  return sample(g, [&K](double x1, double x2) {
    return cplx(K.radial_dot_at(std::hypot(x1, x2)), 0.0);
  });
}

RigidityReport rigidity_check(const CoefficientField& K1,
                              const CoefficientField& K2, double alpha,
                              double r_min, double r_max, int samples) {
  if (alpha < 0.0) throw std::invalid_argument("rigidity_check: alpha < 0");
  RigidityReport rep;
  rep.alpha = alpha;
  rep.passed_K1 = rep.passed_K2 = true;
  rep.min_margin_K1 = rep.min_margin_K2 = std::numeric_limits<double>::max();
  double lg0 = std::log(r_min), lg1 = std::log(r_max);
  for (int i = 0; i < samples; ++i) {
    double r = std::exp(lg0 + (lg1 - lg0) * i / (samples - 1));
    double m1 = alpha * K1.value_at(r) + K1.radial_dot_at(r);
    double m2 = alpha * K2.value_at(r) - 2.0 * K2.value_at(r) + K2.radial_dot_at(r);
    if (m1 < rep.min_margin_K1) {
      rep.min_margin_K1 = m1;
      rep.worst_r_K1 = r;
    }
    if (m2 < rep.min_margin_K2) {
      rep.min_margin_K2 = m2;
      rep.worst_r_K2 = r;
    }
  }
  rep.passed_K1 = rep.min_margin_K1 >= 0.0;
  rep.passed_K2 = rep.min_margin_K2 >= 0.0;
  rep.passed = rep.passed_K1 && rep.passed_K2;
  return rep;
}

RigidityReport rigidity_check(const CoefficientField& K1,
                              const CoefficientField& K2, double alpha,
                              const Grid2D& g) {
  return rigidity_check(K1, K2, alpha, 0.5 * g.h, g.L * std::sqrt(2.0));
}

GrowthReport growth_condition_check(const CoefficientField& K,
                                    const Grid2D& g) {
  GrowthReport rep;
  if (K.is_zero()) {
    rep.finite = true;
    return rep;
  }
  double r_min = 0.5 * g.h, r_max = g.L * std::sqrt(2.0);
  double lg0 = std::log(r_min), lg1 = std::log(r_max);
  const int samples = 512;
  for (int i = 0; i < samples; ++i) {
    double r = std::exp(lg0 + (lg1 - lg0) * i / (samples - 1));
    double d0, d1, d2;  // radial derivatives of the capped power law
    if (r < K.cap_radius) {
      d0 = K.kappa * std::pow(r, K.b);
      d1 = K.kappa * K.b * std::pow(r, K.b - 1.0);
      d2 = K.kappa * std::abs(K.b * (K.b - 1.0)) * std::pow(r, K.b - 2.0);
    } else {
      d0 = K.kappa * std::pow(K.cap_radius, K.b);
      d1 = d2 = 0.0;
    }
    rep.c0 = std::max(rep.c0, std::pow(r, -K.b) * d0);
    rep.c1 = std::max(rep.c1, std::pow(r, 1.0 - K.b) * d1);
    rep.c2 = std::max(rep.c2, std::pow(r, 2.0 - K.b) * d2);
  }
  rep.cap_kink = K.b > 0.0 && K.cap_radius <= r_max;
  rep.finite = std::isfinite(rep.c0) && std::isfinite(rep.c1) &&
               std::isfinite(rep.c2);
  return rep;
}

}  // namespace icq
