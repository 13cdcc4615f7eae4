// Acceptance gate: one numbered, self-contained check per invocation.
// Usage: acceptance <n>  (or no argument to run all checks in sequence).
// Each check prints exactly one "criterion N: PASS/FAIL" line.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "icq/checkpoint.hpp"
#include "icq/config.hpp"
#include "icq/diagnostics.hpp"
#include "icq/evolve.hpp"
#include "icq/fft.hpp"
#include "icq/inequality_lab.hpp"
#include "icq/polar.hpp"
#include "icq/scenarios.hpp"
#include "icq/spectral.hpp"

using namespace icq;
using std::numbers::pi;

namespace {

WaveField gaussian(const Grid2D& g, double amp, double sigma = 1.0) {
  return sample(g, [amp, sigma](double x1, double x2) {
    return amp * std::exp(-(x1 * x1 + x2 * x2) / (2.0 * sigma * sigma));
  });
}

double weighted_sup(const WaveField& f, double theta) {
  const Grid2D& g = f.grid;
  double best = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      double r = std::hypot(g.x(j), g.x(i));
      best = std::max(best, std::pow(r, theta) * std::abs(f.at(i, j)));
    }
  return best;
}

EvolveConfig small_defocusing(const Grid2D& g) {
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 1.0;
  cfg.record_stride = 10;
  cfg.K1 = CoefficientField::power_law(0.25, 1.0, +1, 0.9 * g.L);
  cfg.K2 = CoefficientField::power_law(1.0, 1.0, +1, 0.9 * g.L);
  return cfg;
}

RunConfig scattering_config() {
  RunConfig cfg;
  cfg.grid = Grid2D::make(256, 64.0);
  cfg.K1 = CoefficientField::power_law(0.25, 1.0, +1, 0.9 * cfg.grid.L);
  cfg.K2 = CoefficientField::power_law(1.0, 1.0, +1, 0.9 * cfg.grid.L);
  cfg.evolve.dt = 0.01;
  cfg.evolve.T = 20.0;
  cfg.evolve.record_stride = 10;
  cfg.evolve.K1 = cfg.K1;
  cfg.evolve.K2 = cfg.K2;
  cfg.scenario.kind = ScenarioKind::scattering;
  cfg.scenario.initial.sigma = 4.0;
  cfg.scenario.initial.h_theta_target = 0.05;
  cfg.scenario.delta_small = 0.05;
  cfg.scenario.n_checkpoints = 4;  // t = 5, 10, 15, 20
  cfg.scenario.cauchy_tol_factor = 1e-3;
  return cfg;
}

// 1. Free-flow analytic oracle.
bool crit1(std::string& note) {
  Grid2D g = Grid2D::make(256, 12.0);
  WaveField phi = gaussian(g, 1.0);
  double m = mass(phi);
  WaveField u1 = free_propagate(phi, 1.0);
  double peak = max_abs(u1);
  double var = variance(u1);
  double peak_err = std::abs(peak - 1.0 / std::sqrt(5.0));
  double mass_err = std::abs(m - pi);
  double var_rel = std::abs(var - 5.0 * pi) / (5.0 * pi);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "peak_err=%.2e mass_err=%.2e var_rel=%.2e", peak_err, mass_err,
                var_rel);
  note = buf;
  return peak_err < 1e-6 && mass_err < 1e-8 && var_rel < 5e-3;
}

// 2. Scheme invariants over 1000 steps.
bool crit2(std::string& note) {
  Grid2D g = Grid2D::make(128, 12.0);
  EvolveConfig cfg = small_defocusing(g);
  double max_boundary = 0.0;
  auto obs = [&](double, const WaveField& u) {
    max_boundary = std::max(max_boundary, boundary_mass_fraction(u));
  };
  Trajectory traj = evolve(gaussian(g, 0.3), cfg, obs, -1);
  char buf[160];
  std::snprintf(buf, sizeof buf, "mass_drift=%.2e max_boundary=%.2e",
                traj.max_mass_drift, max_boundary);
  note = buf;
  return traj.termination == Termination::completed &&
         traj.max_mass_drift < 1e-10 && max_boundary < 1e-6;
}

// 3. Second-order convergence of the energy drift.
bool crit3(std::string& note) {
  Grid2D g = Grid2D::make(128, 12.0);
  WaveField phi = gaussian(g, 0.5);
  auto drift = [&](double dt) {
    EvolveConfig cfg = small_defocusing(g);
    cfg.dt = dt;
    Trajectory traj = evolve(phi, cfg, {}, -1);
    return std::abs(energy(traj.snapshots.back(), cfg.K1, cfg.K2) -
                    energy(phi, cfg.K1, cfg.K2));
  };
  double ratio = drift(1e-3) / drift(5e-4);
  note = "drift ratio dt->dt/2 = " + std::to_string(ratio);
  return ratio > 3.5 && ratio < 4.5;
}

// 4. Virial identity along a smooth defocusing run.
bool crit4(std::string& note) {
  Grid2D g = Grid2D::make(128, 12.0);
  EvolveConfig cfg = small_defocusing(g);
  std::vector<double> ts, As, rhss;
  auto obs = [&](double t, const WaveField& u) {
    ts.push_back(t);
    As.push_back(dilation_A(u));
    rhss.push_back(virial_rhs(u, cfg.K1, cfg.K2));
  };
  evolve(gaussian(g, 0.5), cfg, obs, -1);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    double fd = (As[i + 1] - As[i - 1]) / (ts[i + 1] - ts[i - 1]);
    worst = std::max(worst, std::abs(fd - rhss[i]) / std::abs(rhss[i]));
  }
  note = "worst relative mismatch = " + std::to_string(worst);
  return worst < 1e-2;
}

// 5. Dilation identity over T = 1.
bool crit5(std::string& note) {
  Grid2D g = Grid2D::make(128, 12.0);
  EvolveConfig cfg = small_defocusing(g);
  std::vector<double> ts, As, vars;
  auto obs = [&](double t, const WaveField& u) {
    ts.push_back(t);
    As.push_back(dilation_A(u));
    vars.push_back(variance(u));
  };
  evolve(gaussian(g, 0.5), cfg, obs, -1);
  double integ = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i)
    integ += 0.5 * (As[i] + As[i - 1]) * (ts[i] - ts[i - 1]);
  double rel =
      std::abs(vars.back() - vars.front() - 4.0 * integ) /
      std::abs(vars.back() - vars.front());
  note = "relative mismatch = " + std::to_string(rel);
  return rel < 1e-3;
}

// 6. Blowup variance bound and detection before t* = 3/8.
bool crit6(std::string& note) {
  RunConfig cfg;
  cfg.grid = Grid2D::make(256, 12.0);
  cfg.K1 = CoefficientField::power_law(0.0, 1.0, -1, 0.9 * cfg.grid.L);
  cfg.K2 = CoefficientField::power_law(0.0, 1.0, -1, 0.9 * cfg.grid.L);
  cfg.evolve.dt = 1e-4;
  cfg.evolve.T = 0.5;
  cfg.evolve.record_stride = 50;
  cfg.evolve.blowup_gradient_factor = 4.0;
  // Relaxed aliasing backstop so the gradient guard wins the race.
  cfg.evolve.tail_energy_threshold = 0.05;
  cfg.evolve.K1 = cfg.K1;
  cfg.evolve.K2 = cfg.K2;
  cfg.scenario.kind = ScenarioKind::blowup;
  cfg.scenario.initial.amplitude = 2.0;
  cfg.scenario.bound_tolerance_frac = 0.01;
  RunResult res = blowup_run(cfg);
  note = "t_end=" + std::to_string(res.trajectory.t_end) +
         " root=" + std::to_string(res.verdict["parabola_root"].get<double>()) +
         " excess=" + std::to_string(
                          res.verdict["worst_bound_excess"].get<double>());
  return res.passed && res.trajectory.t_end < 3.0 / 8.0;
}

// 7. Potential-energy decay: W(t) = t^{1.75} V bounded by 2 W(1).
bool crit7(std::string& note) {
  RunConfig cfg;
  cfg.grid = Grid2D::make(512, 128.0);
  cfg.K1 = CoefficientField::power_law(0.25, 1.0, +1, 0.9 * cfg.grid.L);
  cfg.K2 = CoefficientField::power_law(1.0, 1.0, +1, 0.9 * cfg.grid.L);
  cfg.evolve.dt = 0.01;
  cfg.evolve.T = 20.0;
  cfg.evolve.record_stride = 25;
  cfg.evolve.K1 = cfg.K1;
  cfg.evolve.K2 = cfg.K2;
  cfg.scenario.kind = ScenarioKind::decay;
  cfg.scenario.initial.amplitude = 0.3;
  cfg.scenario.c_margin = 2.0;
  cfg.scenario.t_start = 1.0;
  RunResult res = decay_run(cfg);
  note = "W(1)=" + std::to_string(res.verdict["W_reference"].get<double>()) +
         " W_max=" + std::to_string(res.verdict["W_max"].get<double>()) +
         " at t=" + std::to_string(res.verdict["W_max_at_t"].get<double>());
  return res.passed;
}

// 8. Small-data scattering Cauchy test.
bool crit8(std::string& note) {
  RunConfig cfg = scattering_config();
  RunResult res = scattering_run(cfg);

  // ||w(20) - w(10)|| directly from stored snapshots.
  const auto& st = res.trajectory.snapshot_times;
  std::size_t i10 = 0, i20 = 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (std::abs(st[i] - 10.0) < std::abs(st[i10] - 10.0)) i10 = i;
    if (std::abs(st[i] - 20.0) < std::abs(st[i20] - 20.0)) i20 = i;
  }
  WaveField w10 = free_propagate(res.trajectory.snapshots[i10], -st[i10]);
  WaveField w20 = free_propagate(res.trajectory.snapshots[i20], -st[i20]);
  double inc = h_theta_norm(w20 - w10, 1);
  double delta = res.verdict["delta"].get<double>();
  note = "||w(20)-w(10)|| = " + std::to_string(inc) +
         " (tol " + std::to_string(1e-3 * delta) + "), verdict " +
         (res.passed ? "pass" : "fail");
  return res.passed && inc < 1e-3 * delta;
}

// 9. Duhamel residual on the scattering run.
bool crit9(std::string& note) {
  RunConfig cfg = scattering_config();
  RunResult res = scattering_run(cfg);
  double r = duhamel_residual(res.trajectory, cfg.evolve);
  note = "residual = " + std::to_string(r);
  return r < 1e-4;
}

// 10. Angular decay inequality over 200 seeded samples, refinement-stable.
bool crit10(std::string& note) {
  TestFunctionFamily fam;
  fam.kind = FamilyKind::gaussian_bumps;
  fam.seed = 2026;
  fam.count = 200;
  Grid2D coarse = Grid2D::make(128, 12.0), fine = Grid2D::make(256, 12.0);
  InequalityReport rc = check_angular_decay(fam, coarse, 0.5);
  InequalityReport rf = check_angular_decay(fam, fine, 0.5);
  double change = std::abs(rf.sup_ratio - rc.sup_ratio) / rf.sup_ratio;
  char buf[160];
  std::snprintf(buf, sizeof buf, "sup128=%.6f sup256=%.6f change=%.3f",
                rc.sup_ratio, rf.sup_ratio, change);
  note = buf;
  return std::isfinite(rf.sup_ratio) && rf.sup_ratio > 0.0 && change < 0.10;
}

// 11. Extended Strichartz scaling across dyadic annuli.
bool crit11(std::string& note) {
  const Grid2D g = Grid2D::make(512, 16.0);
  const PolarGrid pg = PolarGrid::make(192, g.L, 256);
  const double r = 8.0;
  const double tau0 = 8.0;  // common window in rescaled time lambda^2 t

  auto annular = [&](double lambda, int m) {
    SpectralField c(g);
    double k0 = 1.4 * lambda, w = 0.3 * lambda;
    for (int i = 0; i < g.n; ++i) {
      double k2 = g.wavenumber(i);
      for (int j = 0; j < g.n; ++j) {
        double k1 = g.wavenumber(j);
        double kk = std::hypot(k1, k2);
        double amp = std::exp(-(kk - k0) * (kk - k0) / (2.0 * w * w));
        // Parity phase (-1)^{m1+m2} centers the synthesized packet at x = 0
        // (the transform references the grid corner).
        if ((i + j) % 2) amp = -amp;
        double th = std::atan2(k2, k1);
        c.c[static_cast<std::size_t>(i) * g.n + j] =
            amp * cplx(std::cos(m * th), std::sin(m * th));
      }
    }
    return inverse_fft(c);
  };

  std::vector<double> lambdas = {2.0, 4.0, 8.0, 16.0};
  std::vector<double> means;
  for (double lam : lambdas) {
    double acc = 0.0;
    int cnt = 0;
    for (int m = 0; m <= 2; ++m) {
      WaveField f = annular(lam, m);
      LittlewoodPaleyResult lp = littlewood_paley(f, lam);
      double l2 = l2_norm(lp.band);
      if (lp.beyond_nyquist || l2 < 1e-12) continue;
      double T = tau0 / (lam * lam);
      const int steps = 200;
      double h = 2.0 * T / steps;
      double simpson = 0.0;
      for (int q = 0; q <= steps; ++q) {
        double t = -T + q * h;
        double nn = mixed_norm(free_propagate(lp.band, t), pg, r, 2.0);
        double wgt = (q == 0 || q == steps) ? 1.0 : (q % 2 ? 4.0 : 2.0);
        simpson += wgt * nn * nn;
      }
      double ratio =
          std::pow(lam, 2.0 / r) * std::sqrt(simpson * h / 3.0) / l2;
      acc += ratio;
      ++cnt;
    }
    if (cnt == 0) {
      note = "no usable samples at lambda " + std::to_string(lam);
      return false;
    }
    means.push_back(acc / cnt);
  }

  double lo = means[0], hi = means[0];
  for (double v : means) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  LogLogFit fit = loglog_fit(lambdas, means, 1.0, 32.0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "ratios {%.4f %.4f %.4f %.4f} spread=%.2f slope=%.3f",
                means[0], means[1], means[2], means[3], hi / lo, fit.slope);
  note = buf;
  return hi / lo < 2.0 && std::abs(fit.slope) < 0.15;
}

// 12. Commutation of d_theta with D^s and Lambda^s.
bool crit12(std::string& note) {
  Grid2D g = Grid2D::make(128, 12.0);
  TestFunctionFamily fam;
  fam.kind = FamilyKind::band_limited;
  fam.seed = 77;
  fam.count = 20;
  double worst = 0.0;
  for (double s : {1.0 / 3.0, 0.5, 1.0}) {
    InequalityReport rep = check_commutation(fam, g, s);
    worst = std::max(worst, rep.sup_ratio);
  }
  note = "worst relative commutator = " + std::to_string(worst);
  return worst <= 1e-8;
}

// 13. Non-scattering ingredients on L=40, n=512.
bool crit13(std::string& note) {
  RunConfig cfg;
  cfg.grid = Grid2D::make(512, 40.0);
  cfg.K1 = CoefficientField::power_law(1.0, 1.0, +1, 1e9);
  cfg.K2 = CoefficientField::power_law(1.0, 1.0, +1, 1e9);
  cfg.evolve.dt = 0.002;
  cfg.evolve.T = 1.0;  // overwritten by the probe window
  cfg.evolve.record_stride = 5;
  cfg.evolve.K1 = cfg.K1;
  cfg.evolve.K2 = cfg.K2;
  cfg.scenario.kind = ScenarioKind::nonscattering;
  cfg.scenario.initial.amplitude = 0.2;
  cfg.scenario.annulus_delta = 0.05;
  cfg.scenario.annulus_k = 20.0;
  cfg.scenario.t_min = 1.0;
  cfg.scenario.t_max = 2.0;
  RunResult res = nonscattering_probe(cfg);
  auto& v = res.verdict;
  char buf[240];
  std::snprintf(
      buf, sizeof buf,
      "annulus=%s tJ11=%s consistency=%s (mismatch=%.3e budget=%.3e)",
      v["checks"]["annulus_mass"].get<bool>() ? "ok" : "FAIL",
      v["checks"]["tJ11_constant"].get<bool>() ? "ok" : "FAIL",
      v["checks"]["decomposition_consistency"].get<bool>() ? "ok" : "FAIL",
      v["max_mismatch"].get<double>(), v["fd_budget"].get<double>());
  note = buf;
  return res.passed;
}

// 14. Free-flow decay exponents for theta in {0, 1/4, 1/2}.
bool crit14(std::string& note) {
  Grid2D g = Grid2D::make(256, 64.0);
  WaveField phi = gaussian(g, 1.0);
  std::string detail;
  bool ok = true;
  for (double theta : {0.0, 0.25, 0.5}) {
    std::vector<double> ts, vals;
    for (double t = 2.0; t <= 10.0 + 1e-9; t += 0.5) {
      ts.push_back(t);
      vals.push_back(weighted_sup(free_propagate(phi, t), theta));
    }
    LogLogFit fit = loglog_fit(ts, vals, 2.0, 10.0);
    char buf[64];
    std::snprintf(buf, sizeof buf, " slope(%.2f)=%.3f", theta, fit.slope);
    detail += buf;
    ok = ok && fit.slope <= -(1.0 - theta) + 0.1;
  }
  note = detail;
  return ok;
}

// 15. Determinism: identical config + seed, byte-identical diagnostics.
bool crit15(std::string& note) {
  auto run_once = [] {
    RunConfig cfg;
    cfg.grid = Grid2D::make(128, 12.0);
    cfg.K1 = CoefficientField::power_law(0.25, 1.0, +1, 0.9 * cfg.grid.L);
    cfg.K2 = CoefficientField::power_law(1.0, 1.0, +1, 0.9 * cfg.grid.L);
    cfg.evolve.dt = 0.01;
    cfg.evolve.T = 2.0;
    cfg.evolve.record_stride = 10;
    cfg.evolve.K1 = cfg.K1;
    cfg.evolve.K2 = cfg.K2;
    cfg.scenario.kind = ScenarioKind::scattering;
    cfg.scenario.initial.h_theta_target = 0.05;
    cfg.scenario.n_checkpoints = 2;
    RunResult res = scattering_run(cfg);
    return diagnostics_csv(res.diagnostics) + res.verdict.dump();
  };
  std::string a = run_once(), b = run_once();
  note = a == b ? "byte-identical outputs" : "outputs differ";
  return a == b;
}

using Criterion = bool (*)(std::string&);

}  // namespace

int main(int argc, char** argv) {
  const Criterion checks[15] = {crit1, crit2, crit3,  crit4,  crit5,
                                crit6, crit7, crit8,  crit9,  crit10,
                                crit11, crit12, crit13, crit14, crit15};
  int lo = 1, hi = 15;
  if (argc > 1) {
    lo = hi = std::atoi(argv[1]);
    if (lo < 1 || lo > 15) {
      std::fprintf(stderr, "usage: acceptance [1..15]\n");
      return 2;
    }
  }
  bool all_ok = true;
  for (int i = lo; i <= hi; ++i) {
    std::string note;
    bool ok = false;
    try {
      ok = checks[i - 1](note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d: %s  [%s]\n", i, ok ? "PASS" : "FAIL",
                note.c_str());
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
