// icqsim: split-step simulation lab for the 2D inhomogeneous cubic-quintic
// Schrodinger equation. Subcommands: run, verify, sweep, inspect.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "icq/checkpoint.hpp"
#include "icq/config.hpp"
#include "icq/diagnostics.hpp"
#include "icq/evolve.hpp"
#include "icq/fft.hpp"
#include "icq/inequality_lab.hpp"
#include "icq/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kValidationError = 2;
constexpr int kEarlyTermination = 3;
constexpr int kVerdictFail = 4;

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

int run_pipeline(const icq::RunConfig& cfg) {
  icq::RunResult res;
  try {
    res = icq::run_scenario(cfg);
  } catch (const icq::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::runtime_error& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kEarlyTermination;
  }

  fs::path dir(cfg.output.directory);
  fs::create_directories(dir);
  icq::write_diagnostics_csv((dir / "diagnostics.csv").string(),
                             res.diagnostics);
  write_text(dir / "verdict.json", res.verdict.dump(2) + "\n");

  // Timestamps live only here so the scientific outputs stay byte-stable.
  auto now = std::chrono::system_clock::now().time_since_epoch();
  json meta = {{"completed_unix_ms",
                std::chrono::duration_cast<std::chrono::milliseconds>(now)
                    .count()}};
  write_text(dir / "meta.json", meta.dump(2) + "\n");

  const auto& snaps = res.trajectory.snapshots;
  const auto& stimes = res.trajectory.snapshot_times;
  if (!snaps.empty()) {
    icq::checkpoint_write(snaps.front(), stimes.front(),
                          (dir / "state_initial.icqn").string());
    icq::checkpoint_write(snaps.back(), stimes.back(),
                          (dir / "state_final.icqn").string());
    if (cfg.output.checkpoint_stride > 0) {
      for (std::size_t i = 0; i < snaps.size();
           i += static_cast<std::size_t>(cfg.output.checkpoint_stride)) {
        char name[48];
        std::snprintf(name, sizeof name, "state_%05zu.icqn", i);
        icq::checkpoint_write(snaps[i], stimes[i], (dir / name).string());
      }
    }
  }
  if (res.has_phi_plus)
    icq::checkpoint_write(res.phi_plus, 0.0, (dir / "phi_plus.icqn").string());

  if (cfg.output.emit_plots_data) {
    std::ostringstream plot;
    plot << "t,mass,energy,variance,potential_V,grad_norm\n";
    char buf[240];
    for (const auto& r : res.diagnostics) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    r.t, r.mass, r.energy, r.variance, r.potential_V,
                    r.grad_norm);
      plot << buf;
    }
    write_text(dir / "plots.csv", plot.str());
  }

  std::cout << (res.passed ? "verdict: pass" : "verdict: FAIL") << " ("
            << (dir / "verdict.json").string() << ")\n";
  return res.passed ? kOk : kVerdictFail;
}

int do_run(const std::string& config_path, const std::string& out_override) {
  icq::RunConfig cfg;
  try {
    cfg = icq::RunConfig::from_file(config_path);
  } catch (const icq::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidationError;
  }
  if (!out_override.empty()) cfg.output.directory = out_override;
  return run_pipeline(cfg);
}

// ---- verify: identity and inequality property suites ---------------------

struct SuiteReport {
  json checks = json::array();
  bool ok = true;
  void add(const std::string& name, bool pass, json detail = {}) {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    ok = ok && pass;
  }
};

void verify_identities(SuiteReport& rep, std::uint64_t seed, int n) {
  using namespace icq;
  Grid2D g = Grid2D::make(n, 12.0);

  // Parseval: h^2 sum |f|^2 == sum |c|^2 / (4 L^2).
  TestFunctionFamily fam;
  fam.kind = FamilyKind::gaussian_bumps;
  fam.seed = seed;
  fam.count = 4;
  double worst = 0.0;
  for (int i = 0; i < fam.count; ++i) {
    WaveField f = fam.generate(g, i);
    SpectralField c = forward_fft(f);
    double phys = integral_abs2(f), spec = 0.0;
    for (const cplx& z : c.c) spec += std::norm(z);
    spec /= 4.0 * g.L * g.L;
    worst = std::max(worst, std::abs(phys - spec) / phys);
  }
  rep.add("parseval", worst < 1e-12, {{"worst_rel", worst}});

  // Free-flow Gaussian peak: |u(t,0)| = (1+4t^2)^{-1/2}.
  WaveField phi =
      sample(g, [](double x1, double x2) {
        return std::exp(-(x1 * x1 + x2 * x2) / 2.0);
      });
  double peak = max_abs(free_propagate(phi, 1.0));
  double peak_err = std::abs(peak - 1.0 / std::sqrt(5.0));
  rep.add("free_gaussian_peak", peak_err < 1e-6, {{"err", peak_err}});

  // Commutation of the rotation generator with radial multipliers.
  TestFunctionFamily bl;
  bl.kind = FamilyKind::band_limited;
  bl.seed = seed;
  bl.count = 6;
  InequalityReport comm = check_commutation(bl, g, 0.5);
  rep.add("commutation_s_half", comm.sup_ratio <= 1e-8, comm.to_json());

  // Short defocusing run: mass drift, dilation and virial identities,
  // time reversibility.
  EvolveConfig ev;
  ev.dt = 1e-3;
  ev.T = 0.5;
  ev.record_stride = 10;
  ev.K1 = CoefficientField::power_law(0.25, 1.0, +1, 0.9 * g.L);
  ev.K2 = CoefficientField::power_law(1.0, 1.0, +1, 0.9 * g.L);
  WaveField u0 = sample(g, [](double x1, double x2) {
    return 0.3 * std::exp(-(x1 * x1 + x2 * x2) / 2.0);
  });
  std::vector<double> ts, As, vars, rhss;
  auto obs = [&](double t, const WaveField& u) {
    ts.push_back(t);
    As.push_back(dilation_A(u));
    vars.push_back(variance(u));
    rhss.push_back(virial_rhs(u, ev.K1, ev.K2));
  };
  Trajectory traj = evolve(u0, ev, obs, -1);
  rep.add("mass_drift", traj.max_mass_drift < 1e-10,
          {{"drift", traj.max_mass_drift}});

  double integ = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i)
    integ += 0.5 * (As[i] + As[i - 1]) * (ts[i] - ts[i - 1]);
  double dil_err =
      std::abs(vars.back() - vars.front() - 4.0 * integ) / vars.front();
  rep.add("dilation_identity", dil_err < 1e-3, {{"rel_err", dil_err}});

  double vir_worst = 0.0;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    double fd = (As[i + 1] - As[i - 1]) / (ts[i + 1] - ts[i - 1]);
    vir_worst = std::max(vir_worst,
                         std::abs(fd - rhss[i]) / std::abs(rhss[i]));
  }
  rep.add("virial_identity", vir_worst < 1e-2, {{"worst_rel", vir_worst}});

  WaveField fwd = strang_step(u0, ev.dt, ev);
  WaveField back = strang_step(fwd, -ev.dt, ev);
  double rev = l2_norm(back - u0) / l2_norm(u0);
  rep.add("time_reversibility", rev < 1e-10, {{"rel_err", rev}});
}

void verify_inequalities(SuiteReport& rep, std::uint64_t seed, int n) {
  using namespace icq;
  const double L = 12.0;
  Grid2D coarse = Grid2D::make(n / 2, L), fine = Grid2D::make(n, L);

  TestFunctionFamily fam;
  fam.kind = FamilyKind::gaussian_bumps;
  fam.seed = seed;
  fam.count = 50;

  InequalityReport ang = check_angular_decay(fam, fine, 0.5);
  attach_refinement(ang, check_angular_decay(fam, coarse, 0.5));
  double change = std::abs(ang.fine_sup - ang.coarse_sup) / ang.fine_sup;
  rep.add("angular_decay_refinement", change < 0.1, ang.to_json());

  InequalityReport cor = check_corollary_decay(fam, fine, 4.0);
  rep.add("corollary_decay_finite",
          cor.sup_ratio > 0.0 && std::isfinite(cor.sup_ratio), cor.to_json());

  InequalityReport hs = check_hardy_sobolev(fam, fine, 0.25, 4.0);
  rep.add("hardy_sobolev_finite",
          hs.sup_ratio > 0.0 && std::isfinite(hs.sup_ratio), hs.to_json());

  TestFunctionFamily rad = fam;
  rad.radial_only = true;
  rad.count = 20;
  InequalityReport ri = check_radial_interpolation(rad, fine, 0.5);
  rep.add("radial_interpolation_finite",
          ri.sup_ratio > 0.0 && std::isfinite(ri.sup_ratio), ri.to_json());

  // Strichartz at (inf,2) is exactly the isometry; (4,4) matches the
  // closed-form Gaussian integrand.  A large box keeps the dispersed wave
  // from wrapping around inside the time window.
  Grid2D wide = Grid2D::make(256, 48.0);
  WaveField phi = sample(wide, [](double x1, double x2) {
    return std::exp(-(x1 * x1 + x2 * x2) / 2.0);
  });
  double iso = sample_strichartz(phi, {std::numeric_limits<double>::infinity(),
                                       2.0},
                                 5.0);
  rep.add("strichartz_inf_2", iso == 1.0, {{"ratio", iso}});

  double got = sample_strichartz(phi, {4.0, 4.0}, 10.0);
  // 1D oracle: ||e^{itD}phi||_4^4 = pi / (2 (1+4t^2)); Simpson in t.
  auto oracle = [](double T) {
    int m = 4000;
    double h = 2.0 * T / m, acc = 0.0;
    for (int i = 0; i <= m; ++i) {
      double t = -T + i * h;
      double v = std::numbers::pi / (2.0 * (1.0 + 4.0 * t * t));
      acc += (i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0)) * v;
    }
    return std::pow(acc * h / 3.0, 0.25) / std::sqrt(std::numbers::pi);
  };
  double want = oracle(160.0);  // window-converged reference
  double rel = std::abs(got - want) / want;
  rep.add("strichartz_4_4_gaussian", rel < 0.01,
          {{"got", got}, {"oracle", want}, {"rel_err", rel}});
}

int do_verify(const std::string& suite, std::uint64_t seed, int n) {
  SuiteReport rep;
  if (suite != "identities" && suite != "inequalities" && suite != "all") {
    std::cerr << "unknown suite '" << suite
              << "' (expected identities|inequalities|all)\n";
    return kValidationError;
  }
  if (suite == "identities" || suite == "all") verify_identities(rep, seed, n);
  if (suite == "inequalities" || suite == "all")
    verify_inequalities(rep, seed, n);

  json out = {{"suite", suite}, {"seed", seed}, {"n", n},
              {"checks", rep.checks}, {"passed", rep.ok}};
  std::cout << out.dump(2) << "\n";
  return rep.ok ? kOk : 1;
}

// ---- sweep ---------------------------------------------------------------

json parse_scalar(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::exception&) {
    return json(s);  // bare string value
  }
}

int do_sweep(const std::string& config_path,
             const std::vector<std::string>& sets, const std::string& out) {
  json base;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config: " << config_path << "\n";
      return kValidationError;
    }
    try {
      in >> base;
    } catch (const json::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return kValidationError;
    }
  }

  std::vector<std::string> keys;
  std::vector<std::vector<json>> values;
  for (const std::string& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--set expects key=v1,v2,...: " << s << "\n";
      return kValidationError;
    }
    keys.push_back(s.substr(0, eq));
    std::vector<json> vals;
    std::istringstream vs(s.substr(eq + 1));
    std::string cell;
    while (std::getline(vs, cell, ',')) vals.push_back(parse_scalar(cell));
    if (vals.empty()) {
      std::cerr << "--set has no values: " << s << "\n";
      return kValidationError;
    }
    values.push_back(std::move(vals));
  }

  fs::create_directories(out);
  json summary = json::array();
  std::vector<std::size_t> idx(keys.size(), 0);
  int combo = 0;
  bool all_ok = true;
  while (true) {
    json doc = base;
    json combo_desc;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      std::string ptr = "/" + keys[k];
      for (char& ch : ptr)
        if (ch == '.') ch = '/';
      doc[json::json_pointer(ptr)] = values[k][idx[k]];
      combo_desc[keys[k]] = values[k][idx[k]];
    }
    fs::path dir = fs::path(out) / ("combo_" + std::to_string(combo));
    doc["output"]["directory"] = dir.string();

    int code;
    try {
      code = run_pipeline(icq::RunConfig::from_json(doc));
    } catch (const icq::ValidationError& e) {
      std::cerr << "combo " << combo << ": validation error: " << e.what()
                << "\n";
      code = kValidationError;
    }
    summary.push_back({{"combo", combo},
                       {"params", combo_desc},
                       {"exit_code", code},
                       {"directory", dir.string()}});
    all_ok = all_ok && code == kOk;

    ++combo;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < values[k].size()) break;
      idx[k] = 0;
    }
    if (keys.empty() || k == idx.size()) break;
  }
  write_text(fs::path(out) / "sweep_summary.json", summary.dump(2) + "\n");
  return all_ok ? kOk : kVerdictFail;
}

int do_inspect(const std::string& path) {
  try {
    icq::CheckpointHeader h = icq::checkpoint_peek(path);
    json out = {{"magic", "ICQN"},
                {"version", h.version},
                {"n", h.n},
                {"L", h.L},
                {"t", h.t},
                {"payload_bytes", 16ull * h.n * h.n}};
    std::cout << out.dump(2) << "\n";
    return kOk;
  } catch (const icq::CheckpointError& e) {
    std::cerr << e.what() << "\n";
    return kValidationError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"icqsim: inhomogeneous cubic-quintic NLS simulation lab"};
  app.require_subcommand(1);

  std::string config_path, out_override, suite = "all", ckpt_path,
              sweep_out = "sweep_out";
  std::uint64_t seed = 1;
  int n = 128;
  std::vector<std::string> sets;

  CLI::App* run = app.add_subcommand("run", "execute a scenario config");
  run->add_option("config", config_path, "config file (JSON)")->required();
  run->add_option("--out", out_override, "override output.directory");

  CLI::App* verify =
      app.add_subcommand("verify", "run identity/inequality property suites");
  verify->add_option("--suite", suite, "identities|inequalities|all");
  verify->add_option("--seed", seed, "family seed");
  verify->add_option("--n", n, "grid size");

  CLI::App* sweep =
      app.add_subcommand("sweep", "cartesian product over parameter values");
  sweep->add_option("config", config_path, "base config file")->required();
  sweep->add_option("--set", sets,
                    "dotted.key=v1,v2 (repeatable; cartesian product)");
  sweep->add_option("--out", sweep_out, "sweep output directory");

  CLI::App* inspect = app.add_subcommand("inspect", "print checkpoint header");
  inspect->add_option("checkpoint", ckpt_path, "ICQN file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(config_path, out_override);
    if (verify->parsed()) return do_verify(suite, seed, n);
    if (sweep->parsed()) return do_sweep(config_path, sets, sweep_out);
    if (inspect->parsed()) return do_inspect(ckpt_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
