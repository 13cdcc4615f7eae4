#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "icq/diagnostics.hpp"
#include "icq/grid.hpp"
#include "icq/polar.hpp"

namespace icq {

enum class FamilyKind { band_limited, gaussian_bumps, angular_harmonics };

/// Deterministic generator of continuum-defined test functions. A given
/// (kind, seed, index) names one function of x; sampling it on a finer grid
/// yields the same function, which is what makes refinement pairs meaningful.
struct TestFunctionFamily {
  FamilyKind kind = FamilyKind::gaussian_bumps;
  std::uint64_t seed = 1;
  int count = 32;
  double band_fraction = 1.0 / 3.0;  // of the n=128 reference Nyquist
  bool radial_only = false;
  double envelope_sigma_frac = 1.0 / 7.0;  // envelope sigma = frac * L

  WaveField generate(const Grid2D& g, int index) const;
};

struct InequalityReport {
  std::string id;
  std::vector<double> ratios;  // LHS/RHS per sample
  double sup_ratio = 0.0;
  int skipped = 0;
  double coarse_sup = 0.0;  // filled by attach_refinement
  double fine_sup = 0.0;
  bool refinement_checked = false;
  nlohmann::json params;

  nlohmann::json to_json() const;
};

/// Record a coarse/fine sup pair (same seeds, different grids) on `fine`.
void attach_refinement(InequalityReport& fine, const InequalityReport& coarse);

/// ||x|^b f||_inf / ||f||_{H_theta^{1,1}}, 0 < b <= 1/2.
InequalityReport check_angular_decay(const TestFunctionFamily& fam,
                                     const Grid2D& g, double b);

/// ||x|^{1/2-1/p} f||_{L_rho^p L_theta^inf} / ||f||_{H_theta^{1,1}}, p > 2.
InequalityReport check_corollary_decay(const TestFunctionFamily& fam,
                                       const Grid2D& g, double p);

/// ||x|^{-s} f||_p / ||D^s f||_p, 0 < s < 2/p, 2 < p < inf.
InequalityReport check_hardy_sobolev(const TestFunctionFamily& fam,
                                     const Grid2D& g, double s, double p);

/// ||x|^b f||_inf / (||f||_2^b ||grad f||_2^{1-b}) for radial samples.
InequalityReport check_radial_interpolation(const TestFunctionFamily& fam,
                                            const Grid2D& g, double b);

/// Finite-window ratio ||e^{itD} phi||_{L_t^q L_x^r([-T,T])} / ||phi||_2 for
/// an admissible pair; the window is doubled until the ratio moves < 1%.
double sample_strichartz(const WaveField& phi, StrichartzPair pair,
                         double T_window);

/// lambda^{2/r} ||e^{itD} P_lambda f||_{L_t^2 L_rho^r L_theta^2} / ||P_lambda f||_2
/// per sample, r > 6, with P_lambda the dyadic projection.
InequalityReport sample_extended_strichartz(double lambda, double r,
                                            const TestFunctionFamily& fam,
                                            const Grid2D& g,
                                            double T_window = 16.0,
                                            double dt_q = 0.05);

/// Relative commutators ||d_theta M f - M d_theta f||_2 / ||Lambda^{s+1} f||_2
/// for M = D^s and M = Lambda^s (reported as consecutive ratio pairs).
InequalityReport check_commutation(const TestFunctionFamily& fam,
                                   const Grid2D& g, double s);

}  // namespace icq
