#include "icq/evolve.hpp"

#include <cmath>

#include "icq/fft.hpp"
#include "icq/spectral.hpp"

namespace icq {

namespace {

// ||grad u||_{L2}^2 from forward coefficients: (2pi)^{-2} (pi/L)^2 sum k^2|c|^2.
double grad_norm_sq(const SpectralField& s) {
  const Grid2D& g = s.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double k2 = g.wavenumber(i);
    for (int j = 0; j < g.n; ++j) {
      double k1 = g.wavenumber(j);
      acc += (k1 * k1 + k2 * k2) *
             std::norm(s.c[static_cast<std::size_t>(i) * g.n + j]);
    }
  }
  return acc / (4.0 * g.L * g.L);
}

double tail_fraction(const SpectralField& s) {
  const Grid2D& g = s.grid;
  double kc = 0.5 * g.kmax(), tail = 0.0, total = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double k2 = g.wavenumber(i);
    for (int j = 0; j < g.n; ++j) {
      double k1 = g.wavenumber(j);
      double e = std::norm(s.c[static_cast<std::size_t>(i) * g.n + j]);
      total += e;
      if (std::hypot(k1, k2) > kc) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

std::vector<cplx> free_multiplier(const Grid2D& g, double t, bool mask23) {
  std::vector<cplx> m(g.size());
  double kc = 2.0 / 3.0 * g.kmax();
  for (int i = 0; i < g.n; ++i) {
    double k2 = g.wavenumber(i);
    for (int j = 0; j < g.n; ++j) {
      double k1 = g.wavenumber(j);
      double ph = -t * (k1 * k1 + k2 * k2);
      cplx v(std::cos(ph), std::sin(ph));
      if (mask23 && (std::abs(k1) > kc || std::abs(k2) > kc)) v = 0.0;
      m[static_cast<std::size_t>(i) * g.n + j] = v;
    }
  }
  return m;
}

void mul_inplace(SpectralField& s, const std::vector<cplx>& m) {
  for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] *= m[i];
}

}  // namespace

void EvolveConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("EvolveConfig: dt must be > 0");
  if (!(T > 0.0)) throw std::invalid_argument("EvolveConfig: T must be > 0");
  if (!(blowup_gradient_factor > 0.0))
    throw std::invalid_argument("EvolveConfig: blowup threshold must be > 0");
  if (!(tail_energy_threshold > 0.0 && tail_energy_threshold < 1.0))
    throw std::invalid_argument("EvolveConfig: tail threshold not in (0,1)");
  if (record_stride < 1)
    throw std::invalid_argument("EvolveConfig: record_stride must be >= 1");
}

WaveField free_propagate(const WaveField& u, double t) {
  if (t == 0.0) return u;
  return apply_multiplier(u, [t](double k1, double k2) {
    double ph = -t * (k1 * k1 + k2 * k2);
    return cplx(std::cos(ph), std::sin(ph));
  });
}

WaveField nonlinear_phase_step(const WaveField& u, double dt,
                               const WaveField& K1s, const WaveField& K2s) {
  WaveField out(u.grid);
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    double a2 = std::norm(u.v[i]);
    double ph = -dt * (K1s.v[i].real() * a2 + K2s.v[i].real() * a2 * a2);
    out.v[i] = u.v[i] * cplx(std::cos(ph), std::sin(ph));
  }
  return out;
}

WaveField nonlinear_phase_step(const WaveField& u, double dt,
                               const CoefficientField& K1,
                               const CoefficientField& K2) {
  return nonlinear_phase_step(u, dt, sample_coefficient(K1, u.grid),
                              sample_coefficient(K2, u.grid));
}

WaveField strang_step(const WaveField& u, double dt, const EvolveConfig& cfg) {
  WaveField half = free_propagate(u, 0.5 * dt);
  WaveField mid = nonlinear_phase_step(half, dt, cfg.K1, cfg.K2);
  WaveField out = free_propagate(mid, 0.5 * dt);
  if (cfg.use_dealias) out = dealias(out);
  return out;
}

Trajectory evolve(const WaveField& phi, const EvolveConfig& cfg,
                  const EvolveObserver& observer, int snapshot_stride) {
  cfg.validate();
  if (!phi.finite()) throw std::invalid_argument("evolve: non-finite data");

  const Grid2D& g = phi.grid;
  const int steps = static_cast<int>(std::llround(cfg.T / cfg.dt));
  if (steps < 1) throw std::invalid_argument("evolve: T < dt");

  const WaveField K1s = sample_coefficient(cfg.K1, g);
  const WaveField K2s = sample_coefficient(cfg.K2, g);
  const std::vector<cplx> half =
      free_multiplier(g, 0.5 * cfg.dt, cfg.use_dealias);
  const std::vector<cplx> full = free_multiplier(g, cfg.dt, cfg.use_dealias);

  Trajectory traj;
  // snapshot_stride: 0 = store every recorded point, k > 0 = every k-th,
  // -1 = only endpoints. Endpoints are always stored.
  auto record = [&](double t, const WaveField& u, bool endpoint) {
    traj.times.push_back(t);
    if (observer) observer(t, u);
    bool store = endpoint;
    if (snapshot_stride == 0)
      store = true;
    else if (snapshot_stride > 0)
      store = store || (traj.times.size() - 1) %
                               static_cast<std::size_t>(snapshot_stride) ==
                           0;
    if (store) {
      traj.snapshot_times.push_back(t);
      traj.snapshots.push_back(u);
    }
  };

  SpectralField c0 = forward_fft(phi);
  const double mass0 = integral_abs2(phi);
  const double grad0 = std::sqrt(grad_norm_sq(c0));
  const double grad_threshold =
      cfg.blowup_gradient_factor * std::max(grad0, 1e-300);

  record(0.0, phi, true);

  SpectralField c = std::move(c0);
  mul_inplace(c, half);
  WaveField u = inverse_fft(c);

  for (int s = 1; s <= steps; ++s) {
    double t = s * cfg.dt;
    u = nonlinear_phase_step(u, cfg.dt, K1s, K2s);
    c = forward_fft(u);

    // Monitors; all invariant under the trailing free kick. Mass by
    // Parseval: h^2 sum|u|^2 = sum|c|^2 / (4 L^2).
    double grad = std::sqrt(grad_norm_sq(c));
    double tail = tail_fraction(c);
    double mass = 0.0;
    for (const cplx& z : c.c) mass += std::norm(z);
    mass /= 4.0 * g.L * g.L;
    traj.max_mass_drift =
        std::max(traj.max_mass_drift, std::abs(mass - mass0) / mass0);

    bool blowup = grad > grad_threshold;
    bool alias = !blowup && tail > cfg.tail_energy_threshold;
    bool last = s == steps;
    bool at_record = s % cfg.record_stride == 0 || last || blowup || alias;

    if (at_record) {
      mul_inplace(c, half);
      WaveField state = inverse_fft(c);
      if (blowup || alias) {
        record(t, state, true);
        traj.termination = blowup ? Termination::blowup_detected
                                  : Termination::aliasing_detected;
        traj.t_end = t;
        return traj;
      }
      record(t, state, last);
      if (last) break;
      mul_inplace(c, half);  // leading half kick of the next step
      u = inverse_fft(c);
    } else {
      mul_inplace(c, full);
      u = inverse_fft(c);
    }
  }
  traj.termination = Termination::completed;
  traj.t_end = steps * cfg.dt;
  return traj;
}

double duhamel_residual(const Trajectory& traj, const EvolveConfig& cfg) {
  if (traj.termination != Termination::completed)
    throw std::runtime_error("duhamel_residual: trajectory terminated early");
  if (traj.snapshots.size() < 2)
    throw std::runtime_error("duhamel_residual: need at least two snapshots");

  const Grid2D& g = traj.snapshots.front().grid;
  const WaveField K1s = sample_coefficient(cfg.K1, g);
  const WaveField K2s = sample_coefficient(cfg.K2, g);
  const double T = traj.snapshot_times.back();

  WaveField integral(g);
  const std::size_t m = traj.snapshots.size();
  for (std::size_t j = 0; j < m; ++j) {
    double w;
    if (j == 0)
      w = 0.5 * (traj.snapshot_times[1] - traj.snapshot_times[0]);
    else if (j + 1 == m)
      w = 0.5 * (traj.snapshot_times[j] - traj.snapshot_times[j - 1]);
    else
      w = 0.5 * (traj.snapshot_times[j + 1] - traj.snapshot_times[j - 1]);

    const WaveField& uj = traj.snapshots[j];
    WaveField G(g);
    for (std::size_t i = 0; i < G.v.size(); ++i) {
      double a2 = std::norm(uj.v[i]);
      G.v[i] = (K1s.v[i].real() * a2 + K2s.v[i].real() * a2 * a2) * uj.v[i];
    }
    WaveField prop = free_propagate(G, T - traj.snapshot_times[j]);
    for (std::size_t i = 0; i < integral.v.size(); ++i)
      integral.v[i] += w * prop.v[i];
  }

  WaveField rhs = free_propagate(traj.snapshots.front(), T);
  const WaveField& uT = traj.snapshots.back();
  double num = 0.0;
  for (std::size_t i = 0; i < rhs.v.size(); ++i)
    num += std::norm(uT.v[i] - (rhs.v[i] - cplx(0.0, 1.0) * integral.v[i]));
  return std::sqrt(num * g.cell_area()) / l2_norm(uT);
}

}  // namespace icq
