#include "icq/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace icq {

namespace {

double quadratic_positive_root(double a, double b, double c) {
  // a t^2 + b t + c = 0 with a < 0, c > 0: exactly one positive root.
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  double sq = std::sqrt(disc);
  double r1 = (-b + sq) / (2.0 * a), r2 = (-b - sq) / (2.0 * a);
  double root = std::max(r1, r2);
  return root > 0.0 ? root : std::numeric_limits<double>::infinity();
}

}  // namespace

LogLogFit loglog_fit(const std::vector<double>& t, const std::vector<double>& v,
                     double t_lo, double t_hi) {
  LogLogFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi || v[i] <= 0.0) continue;
    double x = std::log(t[i]), y = std::log(v[i]);
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 2) return fit;
  double n = fit.points;
  double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - fit.slope * xs[i] - fit.intercept;
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

RunResult scattering_run(const RunConfig& cfg) {
  if (cfg.scenario.kind != ScenarioKind::scattering)
    throw ValidationError("scattering_run: scenario.kind mismatch");
  if (cfg.K1.b >= 1.0 / 3.0 || cfg.K2.b >= 4.0 / 3.0)
    throw ValidationError(
        "scattering_run: requires fields.b1 < 1/3 and fields.b2 < 4/3");

  const Grid2D& g = cfg.grid;
  WaveField phi = cfg.scenario.initial.build(g);
  const double delta = h_theta_norm(phi, 1);

  // Uniform checkpoint times T_i = i T / n, i = 1..n, rounded to the
  // recording lattice.
  const int ncp = cfg.scenario.n_checkpoints;
  if (ncp < 2) throw ValidationError("scattering_run: n_checkpoints < 2");
  std::vector<double> targets(ncp);
  for (int i = 0; i < ncp; ++i)
    targets[i] = (i + 1) * cfg.evolve.T / ncp;

  RunResult res;
  std::vector<double> cp_times;
  std::vector<WaveField> cp_states;
  double max_boundary = 0.0;
  std::size_t next_cp = 0;

  auto observer = [&](double t, const WaveField& u) {
    DiagnosticsRecord rec = compute_record(u, t, cfg.K1, cfg.K2);
    max_boundary = std::max(max_boundary, rec.boundary_mass_fraction);
    res.diagnostics.push_back(rec);
    if (next_cp < targets.size() &&
        t >= targets[next_cp] - 0.5 * cfg.evolve.dt) {
      cp_times.push_back(t);
      cp_states.push_back(u);
      ++next_cp;
    }
  };

  res.trajectory = evolve(phi, cfg.evolve, observer, /*snapshot_stride=*/1);
  if (res.trajectory.termination != Termination::completed)
    throw std::runtime_error("scattering_run: trajectory terminated early");
  if (cp_states.size() != targets.size())
    throw std::runtime_error("scattering_run: missed a checkpoint time");

  // Interaction picture w(t) = e^{-it D} u(t); scattering = w Cauchy.
  std::vector<WaveField> w;
  w.reserve(cp_states.size());
  for (std::size_t i = 0; i < cp_states.size(); ++i)
    w.push_back(free_propagate(cp_states[i], -cp_times[i]));

  std::vector<double> increments;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    increments.push_back(h_theta_norm(w[i + 1] - w[i], 1));

  res.has_phi_plus = true;
  res.phi_plus = w.back();

  // Convergence of u(t) toward the free evolution of the extracted state.
  std::vector<double> convergence;
  for (std::size_t i = 0; i < cp_states.size(); ++i)
    convergence.push_back(
        h_theta_norm(cp_states[i] - free_propagate(res.phi_plus, cp_times[i]), 1));

  const double tol = cfg.scenario.cauchy_tol_factor * delta;
  bool cauchy_final = increments.empty() || increments.back() < tol;
  bool cauchy_monotone = true;
  for (std::size_t i = 0; i + 1 < increments.size(); ++i)
    if (increments[i + 1] > 1.1 * increments[i] + 1e-12 * delta)
      cauchy_monotone = false;
  bool converging = true;
  for (std::size_t i = 0; i + 1 < convergence.size(); ++i)
    if (cp_times[i] > 5.0 &&
        convergence[i + 1] > convergence[i] + 1e-12 * delta)
      converging = false;
  bool boundary_ok = max_boundary < 1e-6;

  res.verdict = {
      {"scenario", "scattering"},
      {"delta", delta},
      {"checkpoint_times", cp_times},
      {"cauchy_increments", increments},
      {"convergence_to_phi_plus", convergence},
      {"final_increment_tolerance", tol},
      {"max_boundary_mass_fraction", max_boundary},
      {"max_mass_drift", res.trajectory.max_mass_drift},
      {"checks",
       {{"cauchy_final", cauchy_final},
        {"cauchy_monotone", cauchy_monotone},
        {"convergence_decreasing_after_t5", converging},
        {"boundary_mass_ok", boundary_ok}}},
  };
  res.passed = cauchy_final && cauchy_monotone && converging && boundary_ok;
  res.verdict["passed"] = res.passed;
  return res;
}

RunResult blowup_run(const RunConfig& cfg) {
  if (cfg.scenario.kind != ScenarioKind::blowup)
    throw ValidationError("blowup_run: scenario.kind mismatch");
  const double alpha = cfg.scenario.alpha;
  RigidityReport rig = rigidity_check(cfg.K1, cfg.K2, alpha, cfg.grid);
  if (!rig.passed)
    throw ValidationError("blowup_run: rigidity check failed for alpha=" +
                          std::to_string(alpha));

  const Grid2D& g = cfg.grid;
  WaveField phi = cfg.scenario.initial.build(g);
  const double E0 = energy(phi, cfg.K1, cfg.K2);
  if (!(E0 < 0.0))
    throw ValidationError("blowup_run: requires E(phi) < 0, got E = " +
                          std::to_string(E0));
  const double var0 = variance(phi);
  const double A0 = dilation_A(phi);
  const double coef = (8.0 + 4.0 * alpha) * E0;  // < 0
  const double t_star = quadratic_positive_root(coef, 4.0 * A0, var0);
  const double tol = cfg.scenario.bound_tolerance_frac * var0;

  RunResult res;
  auto observer = [&](double t, const WaveField& u) {
    res.diagnostics.push_back(compute_record(u, t, cfg.K1, cfg.K2));
  };
  res.trajectory = evolve(phi, cfg.evolve, observer, /*snapshot_stride=*/-1);

  bool detected = res.trajectory.termination == Termination::blowup_detected;
  bool before_root = res.trajectory.t_end < t_star;
  bool bound_ok = true;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (const DiagnosticsRecord& r : res.diagnostics) {
    if (r.t >= res.trajectory.t_end) continue;  // interior snapshots only
    double bound = var0 + 4.0 * A0 * r.t + coef * r.t * r.t;
    double excess = r.variance - bound;
    worst_excess = std::max(worst_excess, excess);
    if (excess > tol) bound_ok = false;
  }

  res.verdict = {
      {"scenario", "blowup"},
      {"alpha", alpha},
      {"energy", E0},
      {"variance_0", var0},
      {"dilation_A_0", A0},
      {"parabola_root", t_star},
      {"t_end", res.trajectory.t_end},
      {"bound_tolerance", tol},
      {"worst_bound_excess", worst_excess},
      {"checks",
       {{"blowup_detected", detected},
        {"before_parabola_root", before_root},
        {"variance_bound", bound_ok}}},
  };
  res.passed = detected && before_root && bound_ok;
  res.verdict["passed"] = res.passed;
  return res;
}

RunResult decay_run(const RunConfig& cfg) {
  if (cfg.scenario.kind != ScenarioKind::decay)
    throw ValidationError("decay_run: scenario.kind mismatch");
  if (cfg.K1.sign != +1 || cfg.K2.sign != +1)
    throw ValidationError("decay_run: requires sign1 = sign2 = +1");
  if (!(cfg.K1.b > 0.0))
    throw ValidationError("decay_run: requires fields.b1 > 0");
  if (!(cfg.K2.b >= 0.0 && cfg.K2.b <= 2.0 + cfg.K1.b))
    throw ValidationError("decay_run: requires 0 <= b2 <= 2 + b1");

  const double b1 = cfg.K1.b;
  const double t_start = cfg.scenario.t_start;
  const Grid2D& g = cfg.grid;
  WaveField phi = cfg.scenario.initial.build(g);

  RunResult res;
  std::vector<double> times, Vs, Jsq;
  auto observer = [&](double t, const WaveField& u) {
    DiagnosticsRecord rec = compute_record(u, t, cfg.K1, cfg.K2);
    res.diagnostics.push_back(rec);
    times.push_back(t);
    Vs.push_back(rec.potential_V);
    Jsq.push_back(galilean_J_norm_sq(u, t));
  };
  res.trajectory = evolve(phi, cfg.evolve, observer, /*snapshot_stride=*/-1);
  if (res.trajectory.termination != Termination::completed)
    throw std::runtime_error("decay_run: trajectory terminated early");

  // W(t) = t^{2-b1} V(u(t)) on [t_start, T]; the lemma promises an upper
  // bound, so the verdict is boundedness relative to W(t_start).
  double W_ref = -1.0, W_max = -1.0, t_at_max = 0.0;
  std::vector<double> W_series;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_start) continue;
    double W = std::pow(times[i], 2.0 - b1) * Vs[i];
    W_series.push_back(W);
    if (W_ref < 0.0) W_ref = W;
    if (W > W_max) {
      W_max = W;
      t_at_max = times[i];
    }
  }
  bool bounded = W_ref > 0.0 && W_max <= cfg.scenario.c_margin * W_ref;

  // Pseudo-conformal balance: d/dt [ ||Ju||^2 + 8 t^2 V ] <= 8 b1 t V,
  // centered differences; margin = RHS - FD(LHS), expected >= -budget.
  std::vector<double> margins;
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    double dtw = times[i + 1] - times[i - 1];
    double Pp = Jsq[i + 1] + 8.0 * times[i + 1] * times[i + 1] * Vs[i + 1];
    double Pm = Jsq[i - 1] + 8.0 * times[i - 1] * times[i - 1] * Vs[i - 1];
    margins.push_back(8.0 * b1 * times[i] * Vs[i] - (Pp - Pm) / dtw);
  }
  double min_margin = margins.empty()
                          ? 0.0
                          : *std::min_element(margins.begin(), margins.end());

  res.verdict = {
      {"scenario", "decay"},
      {"b1", b1},
      {"t_start", t_start},
      {"W_reference", W_ref},
      {"W_max", W_max},
      {"W_max_at_t", t_at_max},
      {"c_margin", cfg.scenario.c_margin},
      {"W_series", W_series},
      {"pseudoconformal_min_margin", min_margin},
      {"pseudoconformal_margins", margins},
      {"checks", {{"W_bounded", bounded}}},
  };
  res.passed = bounded;
  res.verdict["passed"] = res.passed;
  return res;
}

RunResult nonscattering_probe(const RunConfig& cfg) {
  if (cfg.scenario.kind != ScenarioKind::nonscattering)
    throw ValidationError("nonscattering_probe: scenario.kind mismatch");
  if (!(cfg.K1.b >= 1.0))
    throw ValidationError("nonscattering_probe: requires fields.b1 >= 1");
  if (cfg.K1.sign != +1 || cfg.K2.sign != +1)
    throw ValidationError("nonscattering_probe: requires sign1 = sign2 = +1");
  const Grid2D& g = cfg.grid;
  if (cfg.K1.cap_radius < std::numbers::sqrt2 * g.L ||
      cfg.K2.cap_radius < std::numbers::sqrt2 * g.L)
    throw ValidationError(
        "nonscattering_probe: fields must be pure power laws on the box "
        "(cap >= sqrt(2) L)");

  const double t_min = cfg.scenario.t_min, t_max = cfg.scenario.t_max;
  const double delta = cfg.scenario.annulus_delta, kk = cfg.scenario.annulus_k;
  if (!(t_min > 0.0 && t_max > t_min))
    throw ValidationError("nonscattering_probe: need 0 < t_min < t_max");
  const double t_feasible = std::numbers::sqrt2 * g.L / kk;
  if (kk * t_max > std::numbers::sqrt2 * g.L)
    throw ValidationError(
        "nonscattering_probe: annulus outer radius k*t exceeds the grid; "
        "feasible window is t <= " +
        std::to_string(t_feasible));

  WaveField phi_plus = cfg.scenario.initial.build(g);
  const double m_plus = mass(phi_plus);

  // u solves the full equation from u(t_min) = e^{i t_min D} phi_plus; at
  // small amplitude it shadows the free flow, and dH/dt = J1^1+J1^2+J1^3+J2
  // holds exactly for the continuous flow.
  WaveField u0 = free_propagate(phi_plus, t_min);
  EvolveConfig ev = cfg.evolve;
  ev.T = t_max - t_min;

  RunResult res;
  std::vector<double> times, Hs, J11s, J12s, J13s, J2s, annulus_err;
  std::vector<std::vector<double>> decay_ratio(3);
  const double thetas[3] = {0.0, 0.25, 0.5};

  auto probe = [&](double s, const WaveField& u) {
    double t = t_min + s;
    WaveField up = free_propagate(phi_plus, t);
    res.diagnostics.push_back(compute_record(u, t, cfg.K1, cfg.K2));

    double H = scattering_correlation_H(u, up);
    double J11 = 0, J12 = 0, J13 = 0, J2 = 0, am = 0;
    double peak[3] = {0, 0, 0};
    for (int i = 0; i < g.n; ++i) {
      double x2 = g.x(i);
      for (int j = 0; j < g.n; ++j) {
        double r = std::hypot(g.x(j), x2);
        double w1 = cfg.K1.value_at(r), w2 = cfg.K2.value_at(r);
        cplx uv = u.at(i, j), pv = up.at(i, j);
        double a2 = std::norm(uv), p2 = std::norm(pv);
        J11 += w1 * p2 * p2;
        J12 += w1 * (a2 - p2) * p2;
        J13 += w1 * a2 * std::real((uv - pv) * std::conj(pv));
        J2 += w2 * a2 * a2 * std::real(uv * std::conj(pv));
        if (r >= delta * t && r <= kk * t) am += p2;
        double absp = std::abs(pv);
        for (int q = 0; q < 3; ++q)
          peak[q] = std::max(peak[q], std::pow(r, thetas[q]) * absp);
      }
    }
    double ca = g.cell_area();
    times.push_back(t);
    Hs.push_back(H);
    J11s.push_back(J11 * ca);
    J12s.push_back(J12 * ca);
    J13s.push_back(J13 * ca);
    J2s.push_back(J2 * ca);
    annulus_err.push_back(std::abs(am * ca - m_plus) / m_plus);
    for (int q = 0; q < 3; ++q)
      decay_ratio[q].push_back(std::pow(t, 1.0 - thetas[q]) * peak[q]);
  };

  res.trajectory = evolve(u0, ev, probe, /*snapshot_stride=*/-1);
  if (res.trajectory.termination != Termination::completed)
    throw std::runtime_error("nonscattering_probe: terminated early");

  // (a) annulus mass stays near m(phi_plus).
  double worst_annulus =
      *std::max_element(annulus_err.begin(), annulus_err.end());
  bool annulus_ok = worst_annulus <= 0.05;

  // (b) t * J1^1 pinned to a constant across the window.
  std::vector<double> tJ(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) tJ[i] = times[i] * J11s[i];
  double tJ_mean = 0.0;
  for (double v : tJ) tJ_mean += v;
  tJ_mean /= static_cast<double>(tJ.size());
  double tJ_dev = 0.0;
  for (double v : tJ) tJ_dev = std::max(tJ_dev, std::abs(v - tJ_mean));
  bool tJ_ok = tJ_mean > 0.0 && tJ_dev / tJ_mean <= 0.10;

  // (c) centered-difference dH/dt vs the term decomposition, against a
  // declared budget: leading FD truncation (third differences of H) plus a
  // scheme-error floor.
  double max_mismatch = 0.0, max_d3 = 0.0, max_sum = 0.0;
  std::vector<double> mismatches;
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    double dd = times[i + 1] - times[i - 1];
    double fd = (Hs[i + 1] - Hs[i - 1]) / dd;
    double sum = J11s[i] + J12s[i] + J13s[i] + J2s[i];
    double mm = std::abs(fd - sum);
    mismatches.push_back(mm);
    max_mismatch = std::max(max_mismatch, mm);
    max_sum = std::max(max_sum, std::abs(sum));
  }
  for (std::size_t i = 2; i + 2 < times.size(); ++i) {
    double hh = 0.5 * (times[i + 1] - times[i - 1]);
    double d3 = (Hs[i + 2] - 2.0 * Hs[i + 1] + 2.0 * Hs[i - 1] - Hs[i - 2]) /
                (2.0 * hh * hh * hh);
    max_d3 = std::max(max_d3, std::abs(d3));
  }
  double stride_dt = times.size() > 1 ? times[1] - times[0] : ev.dt;
  double fd_budget = stride_dt * stride_dt / 6.0 * max_d3 +
                     1e-3 * max_sum + 1e-12;
  bool consistency_ok = max_mismatch <= fd_budget;

  res.has_phi_plus = true;
  res.phi_plus = std::move(phi_plus);
  res.verdict = {
      {"scenario", "nonscattering"},
      {"mass_phi_plus", m_plus},
      {"times", times},
      {"H", Hs},
      {"J1_1", J11s},
      {"J1_2", J12s},
      {"J1_3", J13s},
      {"J2", J2s},
      {"annulus_relative_error", annulus_err},
      {"t_J1_1", tJ},
      {"t_J1_1_mean", tJ_mean},
      {"decay_ratio_theta_0", decay_ratio[0]},
      {"decay_ratio_theta_quarter", decay_ratio[1]},
      {"decay_ratio_theta_half", decay_ratio[2]},
      {"dHdt_mismatches", mismatches},
      {"fd_budget", fd_budget},
      {"max_mismatch", max_mismatch},
      {"checks",
       {{"annulus_mass", annulus_ok},
        {"tJ11_constant", tJ_ok},
        {"decomposition_consistency", consistency_ok}}},
  };
  res.passed = annulus_ok && tJ_ok && consistency_ok;
  res.verdict["passed"] = res.passed;
  return res;
}

RunResult run_scenario(const RunConfig& cfg) {
  switch (cfg.scenario.kind) {
    case ScenarioKind::scattering:
      return scattering_run(cfg);
    case ScenarioKind::blowup:
      return blowup_run(cfg);
    case ScenarioKind::decay:
      return decay_run(cfg);
    case ScenarioKind::nonscattering:
      return nonscattering_probe(cfg);
  }
  throw ValidationError("run_scenario: unknown kind");
}

}  // namespace icq
