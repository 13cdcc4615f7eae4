#include <doctest.h>

#include "icq/diagnostics.hpp"
#include "icq/evolve.hpp"
#include "icq/spectral.hpp"
#include "oracles.hpp"

using namespace icq;
using std::numbers::pi;

namespace {

WaveField gauss(const Grid2D& g, double amp) {
  return sample(g, [amp](double x1, double x2) {
    return amp * std::exp(-(x1 * x1 + x2 * x2) / 2.0);
  });
}

Grid2D big() { return Grid2D::make(256, 12.0); }

}  // namespace

TEST_SUITE_BEGIN("diagnostics");

TEST_CASE("mass") {
  Grid2D g = big();
  CHECK(mass(gauss(g, 1.0)) == doctest::Approx(pi).epsilon(1e-8));
  CHECK(mass(gauss(g, 2.0)) == doctest::Approx(4.0 * pi).epsilon(1e-8));
  CHECK(mass(WaveField(g)) == 0.0);
}

TEST_CASE("energy against analytic gaussian integrals") {
  Grid2D g = big();
  CoefficientField one = CoefficientField::power_law(0.0, 1.0, +1, 1e9);
  CoefficientField neg = CoefficientField::power_law(0.0, 1.0, -1, 1e9);
  // E(e^{-r^2/2}) with K1=K2=1: pi/2 + pi/8 + pi/18 = 49 pi / 72.
  CHECK(energy(gauss(g, 1.0), one, one) ==
        doctest::Approx(49.0 * pi / 72.0).epsilon(1e-7));
  // E(2 e^{-r^2/2}) with K1=K2=-1: 2 pi - 2 pi - 32 pi / 9.
  CHECK(energy(gauss(g, 2.0), neg, neg) ==
        doctest::Approx(-32.0 * pi / 9.0).epsilon(1e-7));
  // K = 0 leaves the kinetic term only.
  CoefficientField z = CoefficientField::zero();
  double gn = grad_norm(gauss(g, 1.0));
  CHECK(energy(gauss(g, 1.0), z, z) ==
        doctest::Approx(0.5 * gn * gn).epsilon(1e-12));
  // Cross-check the quartic piece by radial quadrature.
  double q4 = oracle::radial_integral(
      [](double r) { return std::exp(-2.0 * r * r); }, g.L);
  CHECK(q4 == doctest::Approx(pi / 2.0).epsilon(1e-8));
}

TEST_CASE("dilation functional") {
  Grid2D g = big();
  CHECK(dilation_A(gauss(g, 1.0)) == doctest::Approx(0.0).epsilon(1e-10));

  // Chirped gaussian e^{-r^2/2} e^{-i r^2/4}: A = -pi/2.
  WaveField ch = sample(g, [](double x1, double x2) {
    double r2 = x1 * x1 + x2 * x2;
    double ph = -r2 / 4.0;
    return std::exp(-r2 / 2.0) * cplx(std::cos(ph), std::sin(ph));
  });
  // Oracle: Im conj(u) (x.grad u) = -2 c r^2 |g|^2 with c = 1/4 here,
  // integrated radially: -2c int r^2 e^{-r^2} dA = -2c * pi = -pi/2.
  double want = oracle::radial_integral(
      [](double r) { return -0.5 * r * r * std::exp(-r * r); }, g.L);
  CHECK(want == doctest::Approx(-pi / 2.0).epsilon(1e-8));
  CHECK(dilation_A(ch) == doctest::Approx(-pi / 2.0).epsilon(1e-6));

  // Radial modulus with an e^{i theta} phase has no radial phase gradient.
  WaveField harm = sample(g, [](double x1, double x2) {
    double r2 = x1 * x1 + x2 * x2;
    double r = std::sqrt(r2);
    cplx phase = r > 1e-14 ? cplx(x1 / r, x2 / r) : cplx(0.0);
    return phase * r * std::exp(-r2 / 2.0);
  });
  CHECK(dilation_A(harm) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("variance") {
  Grid2D g = big();
  CHECK(variance(gauss(g, 1.0)) == doctest::Approx(pi).epsilon(1e-8));
  CHECK(variance(WaveField(g)) == 0.0);
  // Free evolution: pi + 4 pi t^2 at t = 1.
  WaveField u1 = free_propagate(gauss(g, 1.0), 1.0);
  CHECK(variance(u1) == doctest::Approx(5.0 * pi).epsilon(5e-3));
}

TEST_CASE("potential V") {
  Grid2D g = big();
  CoefficientField one = CoefficientField::power_law(0.0, 1.0, -1, 1e9);
  WaveField f = gauss(g, 1.0);
  // |K| enters V, so the focusing sign does not flip it.
  CHECK(potential_V(f, one, one) ==
        doctest::Approx(pi / 8.0 + pi / 18.0).epsilon(1e-7));
  CHECK(potential_V(WaveField(g), one, one) == 0.0);
  WaveField f2 = gauss(g, 2.0);
  CoefficientField z = CoefficientField::zero();
  CHECK(potential_V(f2, one, z) ==
        doctest::Approx(16.0 * potential_V(f, one, z)).epsilon(1e-10));
  CHECK(potential_V(f2, z, one) ==
        doctest::Approx(64.0 * potential_V(f, z, one)).epsilon(1e-10));
}

TEST_CASE("angular sobolev norm") {
  Grid2D g = big();
  WaveField f = gauss(g, 1.0);
  double h1 = l2_norm(fractional_derivative(f, 1.0, FracKind::inhomogeneous));
  CHECK(h_theta_norm(f, 1) == doctest::Approx(h1).epsilon(1e-8));

  WaveField harm = sample(g, [](double x1, double x2) {
    double r2 = x1 * x1 + x2 * x2;
    return cplx(x1, x2) * std::exp(-r2 / 2.0);  // e^{i theta} g(rho)
  });
  double h1h = l2_norm(fractional_derivative(harm, 1.0, FracKind::inhomogeneous));
  CHECK(h_theta_norm(harm, 1) == doctest::Approx(2.0 * h1h).epsilon(1e-8));
  CHECK(h_theta_norm(WaveField(g), 1) == 0.0);
  CHECK_THROWS_AS(h_theta_norm(f, 3), std::invalid_argument);
}

TEST_CASE("galilean operator") {
  Grid2D g = big();
  WaveField f = gauss(g, 1.0);
  auto J0 = galilean_J(f, 0.0);
  WaveField x1f = sample(g, [](double x1, double x2) {
    return x1 * std::exp(-(x1 * x1 + x2 * x2) / 2.0);
  });
  CHECK(l2_norm(J0[0] - x1f) / l2_norm(x1f) < 1e-10);

  // J(t) = e^{itD} x e^{-itD}, so ||J u(t)||^2 is conserved by the free flow
  // and equals ||x phi||^2 = pi here.
  CHECK(galilean_J_norm_sq(f, 0.0) == doctest::Approx(pi).epsilon(1e-8));
  WaveField u1 = free_propagate(f, 1.0);
  CHECK(galilean_J_norm_sq(u1, 1.0) == doctest::Approx(pi).epsilon(1e-4));
  // Longer times need a bigger box: |x| u is boundary sensitive.
  Grid2D gb = Grid2D::make(256, 24.0);
  WaveField fb = sample(gb, [](double x1, double x2) {
    return std::exp(-(x1 * x1 + x2 * x2) / 2.0);
  });
  WaveField u2 = free_propagate(fb, 2.0);
  CHECK(galilean_J_norm_sq(u2, 2.0) ==
        doctest::Approx(galilean_J_norm_sq(fb, 0.0)).epsilon(1e-6));
}

TEST_CASE("scattering correlation H") {
  Grid2D g = big();
  WaveField f = gauss(g, 1.0);
  CHECK(scattering_correlation_H(f, f) == doctest::Approx(0.0));
  WaveField iu = cplx(0.0, 1.0) * f;
  CHECK(scattering_correlation_H(iu, f) ==
        doctest::Approx(-mass(f)).epsilon(1e-10));
  WaveField other = free_propagate(f, 0.3);
  double H = scattering_correlation_H(other, f);
  CHECK(std::abs(H) <= std::sqrt(mass(other) * mass(f)) + 1e-12);
  WaveField small(Grid2D::make(64, 12.0));
  CHECK_THROWS_AS(scattering_correlation_H(f, small), std::invalid_argument);
}

TEST_CASE("virial right-hand side") {
  Grid2D g = big();
  WaveField f = gauss(g, 1.0);
  CoefficientField z = CoefficientField::zero();
  double gn = grad_norm(f);
  CHECK(virial_rhs(f, z, z) == doctest::Approx(2.0 * gn * gn).epsilon(1e-10));

  CoefficientField neg = CoefficientField::power_law(0.0, 1.0, -1, 1e9);
  double sext = oracle::radial_integral(
      [](double r) { return std::exp(-3.0 * r * r); }, g.L);
  double want = 4.0 * energy(f, neg, neg) - 2.0 / 3.0 * sext;
  CHECK(virial_rhs(f, neg, neg) == doctest::Approx(want).epsilon(1e-7));

  // Pure power law: 4E - (b1/2) int |x|^{b1}|u|^4 + ((2-b2)/3) int |x|^{b2}|u|^6.
  CoefficientField K1 = CoefficientField::power_law(0.25, 1.0, +1, 1e9);
  CoefficientField K2 = CoefficientField::power_law(1.0, 1.0, +1, 1e9);
  double q4 = oracle::radial_integral(
      [](double r) { return std::pow(r, 0.25) * std::exp(-2.0 * r * r); }, g.L);
  double q6 = oracle::radial_integral(
      [](double r) { return r * std::exp(-3.0 * r * r); }, g.L);
  // r^{1/4} is cusped at the origin, so grid quadrature converges slowly.
  double want2 = 4.0 * energy(f, K1, K2) - 0.125 * q4 + q6 / 3.0;
  CHECK(virial_rhs(f, K1, K2) == doctest::Approx(want2).epsilon(1e-4));
}

TEST_CASE("besov angular norm") {
  Grid2D g = Grid2D::make(128, 12.0);
  PolarGrid pg = PolarGrid::make(96, 12.0, 256);
  CHECK(besov_angular_norm(WaveField(g), pg, 2.0, 0.5) == 0.0);

  // s=0, r=2 is two-sided equivalent to L2 (raised-cosine overlap constants).
  WaveField f = gauss(g, 1.0);
  double b = besov_angular_norm(f, pg, 2.0, 0.0);
  double l2 = l2_norm(f);
  CHECK(b / l2 > 0.65);
  CHECK(b / l2 < 1.05);
}

TEST_CASE("strichartz pairs") {
  double inf = std::numeric_limits<double>::infinity();
  CHECK(StrichartzPair{inf, 2.0}.admissible());
  CHECK(StrichartzPair{4.0, 4.0}.admissible());
  CHECK(StrichartzPair{3.0, 6.0}.admissible());
  CHECK(!StrichartzPair{2.0, inf}.admissible());
  CHECK(!StrichartzPair{4.0, 5.0}.admissible());

  CHECK(StrichartzPair{2.5, 8.0}.in_triangle());
  CHECK(!StrichartzPair{4.0, 8.0}.in_triangle());  // 1/q too small
  CHECK(StrichartzPair{inf, 2.0}.in_triangle());   // closure corner
  CHECK(StrichartzPair{4.0, 4.0}.s() == doctest::Approx(0.0));
  CHECK(StrichartzPair{2.0, 8.0}.s() == doctest::Approx(0.25));
}

TEST_SUITE_END();
