#include "icq/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace icq {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* section,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    throw ValidationError(std::string(section) + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ValidationError(std::string("unknown key '") + it.key() + "' in " +
                            section);
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double need_num(const json& j, const char* section, const char* key) {
  const json* v = find(j, key);
  if (!v || !v->is_number())
    throw ValidationError(std::string(section) + "." + key +
                          ": required number missing or wrong type");
  return v->get<double>();
}

double opt_num(const json& j, const char* section, const char* key,
               double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number())
    throw ValidationError(std::string(section) + "." + key + ": not a number");
  return v->get<double>();
}

int opt_int(const json& j, const char* section, const char* key,
            int fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer())
    throw ValidationError(std::string(section) + "." + key +
                          ": not an integer");
  return v->get<int>();
}

bool opt_bool(const json& j, const char* section, const char* key,
              bool fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean())
    throw ValidationError(std::string(section) + "." + key + ": not a bool");
  return v->get<bool>();
}

std::string opt_str(const json& j, const char* section, const char* key,
                    const std::string& fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string())
    throw ValidationError(std::string(section) + "." + key + ": not a string");
  return v->get<std::string>();
}

CoefficientField parse_field(const json& f, const char* section, int which,
                             double default_cap) {
  std::string sfx = std::to_string(which);
  double b = need_num(f, section, ("b" + sfx).c_str());
  double kappa = need_num(f, section, ("kappa" + sfx).c_str());
  int sign = opt_int(f, section, ("sign" + sfx).c_str(), +1);
  double cap = opt_num(f, section, ("cap" + sfx).c_str(), default_cap);
  if (kappa == 0.0) return CoefficientField::zero();
  try {
    return CoefficientField::power_law(b, kappa, sign, cap);
  } catch (const std::exception& e) {
    throw ValidationError(std::string(section) + ": field " + sfx + ": " +
                          e.what());
  }
}

}  // namespace

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::scattering:
      return "scattering";
    case ScenarioKind::blowup:
      return "blowup";
    case ScenarioKind::decay:
      return "decay";
    case ScenarioKind::nonscattering:
      return "nonscattering";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "scattering") return ScenarioKind::scattering;
  if (s == "blowup") return ScenarioKind::blowup;
  if (s == "decay") return ScenarioKind::decay;
  if (s == "nonscattering") return ScenarioKind::nonscattering;
  throw ValidationError("scenario.kind: unknown kind '" + s + "'");
}

WaveField InitialData::build(const Grid2D& g) const {
  if (family != "gaussian" && family != "chirped_gaussian" &&
      family != "harmonic")
    throw ValidationError("initial.family: unknown family '" + family + "'");
  if (!(sigma > 0.0)) throw ValidationError("initial.sigma: must be > 0");

  const int am = std::abs(angular_mode);
  const double s2 = 2.0 * sigma * sigma;
  WaveField f = sample(g, [&](double x1, double x2) {
    double r2 = x1 * x1 + x2 * x2;
    cplx z(x1 / sigma, angular_mode >= 0 ? x2 / sigma : -x2 / sigma);
    cplx zp = 1.0;
    for (int p = 0; p < am; ++p) zp *= z;
    double ph = -chirp * r2;
    return zp * std::exp(-r2 / s2) * cplx(std::cos(ph), std::sin(ph));
  });

  double scale = amplitude;
  if (h_theta_target > 0.0) {
    double nn = h_theta_norm(f, 1);
    if (nn < 1e-300) throw ValidationError("initial: degenerate profile");
    scale = h_theta_target / nn;
  }
  for (cplx& v : f.v) v *= scale;
  return f;
}

RunConfig RunConfig::from_json(const json& j) {
  check_keys(j, "config",
             {"schema_version", "seed", "grid", "fields", "evolve", "scenario",
              "output"});
  RunConfig cfg;

  cfg.schema_version = opt_int(j, "config", "schema_version", -1);
  if (cfg.schema_version != 1)
    throw ValidationError("config.schema_version: must be 1");
  const json* seed = find(j, "seed");
  if (seed) {
    if (!seed->is_number_integer() || seed->get<std::int64_t>() < 0)
      throw ValidationError("config.seed: must be a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(seed->get<std::int64_t>());
  }

  const json* grid = find(j, "grid");
  if (!grid) throw ValidationError("config.grid: required section missing");
  check_keys(*grid, "grid", {"n", "L"});
  try {
    cfg.grid = Grid2D::make(opt_int(*grid, "grid", "n", 0),
                            need_num(*grid, "grid", "L"));
  } catch (const std::exception& e) {
    throw ValidationError(std::string("config.grid: ") + e.what());
  }

  const json* fields = find(j, "fields");
  if (!fields) throw ValidationError("config.fields: required section missing");
  check_keys(*fields, "fields",
             {"b1", "kappa1", "sign1", "cap1", "b2", "kappa2", "sign2",
              "cap2"});
  const double default_cap = 0.9 * cfg.grid.L;
  cfg.K1 = parse_field(*fields, "fields", 1, default_cap);
  cfg.K2 = parse_field(*fields, "fields", 2, default_cap);

  const json* ev = find(j, "evolve");
  if (!ev) throw ValidationError("config.evolve: required section missing");
  check_keys(*ev, "evolve",
             {"dt", "T", "record_stride", "blowup_gradient_factor",
              "tail_energy_threshold", "use_dealias"});
  cfg.evolve.dt = need_num(*ev, "evolve", "dt");
  cfg.evolve.T = need_num(*ev, "evolve", "T");
  cfg.evolve.record_stride = opt_int(*ev, "evolve", "record_stride", 1);
  cfg.evolve.blowup_gradient_factor =
      opt_num(*ev, "evolve", "blowup_gradient_factor", 50.0);
  cfg.evolve.tail_energy_threshold =
      opt_num(*ev, "evolve", "tail_energy_threshold", 0.01);
  cfg.evolve.use_dealias = opt_bool(*ev, "evolve", "use_dealias", false);
  cfg.evolve.K1 = cfg.K1;
  cfg.evolve.K2 = cfg.K2;
  try {
    cfg.evolve.validate();
  } catch (const std::exception& e) {
    throw ValidationError(std::string("config.evolve: ") + e.what());
  }

  const json* sc = find(j, "scenario");
  if (!sc) throw ValidationError("config.scenario: required section missing");
  check_keys(*sc, "scenario", {"kind", "initial", "knobs"});
  cfg.scenario.kind =
      scenario_kind_from_string(opt_str(*sc, "scenario", "kind", ""));

  if (const json* ini = find(*sc, "initial")) {
    check_keys(*ini, "scenario.initial",
               {"family", "sigma", "amplitude", "h_theta_target", "chirp",
                "angular_mode"});
    InitialData& d = cfg.scenario.initial;
    d.family = opt_str(*ini, "scenario.initial", "family", "gaussian");
    d.sigma = opt_num(*ini, "scenario.initial", "sigma", 1.0);
    d.amplitude = opt_num(*ini, "scenario.initial", "amplitude", 1.0);
    d.h_theta_target = opt_num(*ini, "scenario.initial", "h_theta_target", 0.0);
    d.chirp = opt_num(*ini, "scenario.initial", "chirp", 0.0);
    d.angular_mode = opt_int(*ini, "scenario.initial", "angular_mode", 0);
  }

  const json* kn = find(*sc, "knobs");
  ScenarioSettings& s = cfg.scenario;
  switch (s.kind) {
    case ScenarioKind::scattering:
      if (kn) {
        check_keys(*kn, "scenario.knobs",
                   {"delta_small", "n_checkpoints", "cauchy_tol_factor"});
        s.delta_small = opt_num(*kn, "knobs", "delta_small", s.delta_small);
        s.n_checkpoints = opt_int(*kn, "knobs", "n_checkpoints", s.n_checkpoints);
        s.cauchy_tol_factor =
            opt_num(*kn, "knobs", "cauchy_tol_factor", s.cauchy_tol_factor);
      }
      // Smallness is specified in H_theta^{1,1}; wire it into the data unless
      // the amplitude was pinned explicitly.
      if (s.initial.h_theta_target == 0.0)
        s.initial.h_theta_target = s.delta_small;
      break;
    case ScenarioKind::blowup:
      if (kn) {
        check_keys(*kn, "scenario.knobs", {"alpha", "bound_tolerance_frac"});
        s.alpha = opt_num(*kn, "knobs", "alpha", s.alpha);
        s.bound_tolerance_frac =
            opt_num(*kn, "knobs", "bound_tolerance_frac", s.bound_tolerance_frac);
      }
      break;
    case ScenarioKind::decay:
      if (kn) {
        check_keys(*kn, "scenario.knobs", {"c_margin", "t_start"});
        s.c_margin = opt_num(*kn, "knobs", "c_margin", s.c_margin);
        s.t_start = opt_num(*kn, "knobs", "t_start", s.t_start);
      }
      break;
    case ScenarioKind::nonscattering:
      if (kn) {
        check_keys(*kn, "scenario.knobs",
                   {"annulus_delta", "annulus_k", "t_min", "t_max"});
        s.annulus_delta = opt_num(*kn, "knobs", "annulus_delta", s.annulus_delta);
        s.annulus_k = opt_num(*kn, "knobs", "annulus_k", s.annulus_k);
        s.t_min = opt_num(*kn, "knobs", "t_min", s.t_min);
        s.t_max = opt_num(*kn, "knobs", "t_max", s.t_max);
      }
      break;
  }

  if (const json* out = find(j, "output")) {
    check_keys(*out, "output",
               {"directory", "checkpoint_stride", "emit_plots_data"});
    cfg.output.directory = opt_str(*out, "output", "directory", "out");
    cfg.output.checkpoint_stride =
        opt_int(*out, "output", "checkpoint_stride", 0);
    cfg.output.emit_plots_data =
        opt_bool(*out, "output", "emit_plots_data", false);
  }

  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

void RunConfig::validate() const {
  if (scenario.n_checkpoints < 1)
    throw ValidationError("scenario.knobs.n_checkpoints: must be >= 1");
  if (!(scenario.delta_small > 0.0))
    throw ValidationError("scenario.knobs.delta_small: must be > 0");
  if (!(scenario.c_margin > 0.0))
    throw ValidationError("scenario.knobs.c_margin: must be > 0");
  if (output.checkpoint_stride < 0)
    throw ValidationError("output.checkpoint_stride: must be >= 0");
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  std::ostringstream out;
  out << "t,mass,energy,dilation_A,variance,potential_V,grad_norm,"
         "h_theta_11,tail_fraction,boundary_mass_fraction\n";
  char buf[32];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << sep;
  };
  for (const DiagnosticsRecord& r : records) {
    put(r.t, ',');
    put(r.mass, ',');
    put(r.energy, ',');
    put(r.dilation_A, ',');
    put(r.variance, ',');
    put(r.potential_V, ',');
    put(r.grad_norm, ',');
    put(r.h_theta_11, ',');
    put(r.tail_fraction, ',');
    put(r.boundary_mass_fraction, '\n');
  }
  return out.str();
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << diagnostics_csv(records);
}

std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("diagnostics csv: empty input");
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    DiagnosticsRecord r;
    double* slots[10] = {&r.t,          &r.mass,        &r.energy,
                         &r.dilation_A, &r.variance,    &r.potential_V,
                         &r.grad_norm,  &r.h_theta_11,  &r.tail_fraction,
                         &r.boundary_mass_fraction};
    std::istringstream ls(line);
    std::string cell;
    for (int i = 0; i < 10; ++i) {
      if (!std::getline(ls, cell, ','))
        throw std::runtime_error("diagnostics csv: short row");
      *slots[i] = std::stod(cell);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace icq
