#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "icq/checkpoint.hpp"
#include "icq/config.hpp"

using namespace icq;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path p;
  TempDir() {
    p = fs::temp_directory_path() /
        ("icqsim_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(p);
  }
  ~TempDir() { fs::remove_all(p); }
};

json valid_config() {
  return json{
      {"schema_version", 1},
      {"seed", 7},
      {"grid", {{"n", 128}, {"L", 12.0}}},
      {"fields",
       {{"b1", 0.25}, {"kappa1", 1.0}, {"sign1", 1},
        {"b2", 1.0}, {"kappa2", 1.0}, {"sign2", 1}}},
      {"evolve", {{"dt", 0.01}, {"T", 2.0}, {"record_stride", 10}}},
      {"scenario",
       {{"kind", "scattering"},
        {"knobs", {{"delta_small", 0.05}, {"n_checkpoints", 4}}}}},
      {"output", {{"directory", "out"}}},
  };
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("checkpoint round trip is byte exact") {
  TempDir tmp;
  Grid2D g = Grid2D::make(64, 8.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nrm;
  WaveField u(g);
  for (cplx& v : u.v) v = cplx(nrm(rng), nrm(rng));

  fs::path f = tmp.p / "a.icqn";
  checkpoint_write(u, 1.25, f.string());
  CHECK(fs::file_size(f) == 28u + 16u * 64u * 64u);

  CheckpointData back = checkpoint_read(f.string());
  CHECK(back.t == 1.25);
  CHECK(back.field.grid.n == 64);
  CHECK(back.field.grid.L == 8.0);
  REQUIRE(back.field.v.size() == u.v.size());
  for (std::size_t i = 0; i < u.v.size(); ++i)
    CHECK(back.field.v[i] == u.v[i]);  // bitwise

  CheckpointHeader h = checkpoint_peek(f.string());
  CHECK(h.version == 1);
  CHECK(h.n == 64);
}

TEST_CASE("corrupt checkpoints are structured errors") {
  TempDir tmp;
  Grid2D g = Grid2D::make(16, 2.0);
  WaveField u(g);
  fs::path f = tmp.p / "b.icqn";
  checkpoint_write(u, 0.0, f.string());

  // Truncate the payload.
  fs::resize_file(f, fs::file_size(f) - 8);
  CHECK_THROWS_WITH_AS(checkpoint_read(f.string()),
                       doctest::Contains("payload length mismatch"),
                       CheckpointError);

  // Wrong magic.
  {
    std::fstream io(f, std::ios::in | std::ios::out | std::ios::binary);
    io.write("XXXX", 4);
  }
  CHECK_THROWS_WITH_AS(checkpoint_peek(f.string()),
                       doctest::Contains("not an ICQN checkpoint"),
                       CheckpointError);

  CHECK_THROWS_AS(checkpoint_read((tmp.p / "missing.icqn").string()),
                  CheckpointError);
}

TEST_CASE("config parses and is strict") {
  RunConfig cfg = RunConfig::from_json(valid_config());
  CHECK(cfg.grid.n == 128);
  CHECK(cfg.K1.b == 0.25);
  CHECK(cfg.K1.cap_radius == doctest::Approx(0.9 * 12.0));  // default cap
  CHECK(cfg.scenario.kind == ScenarioKind::scattering);
  CHECK(cfg.scenario.initial.h_theta_target == doctest::Approx(0.05));
  CHECK(cfg.evolve.K1.kappa == cfg.K1.kappa);

  json bad = valid_config();
  bad["grid"]["m"] = 3;  // unknown key, nested
  CHECK_THROWS_WITH_AS(RunConfig::from_json(bad), doctest::Contains("'m'"),
                       ValidationError);

  bad = valid_config();
  bad["typo"] = 1;
  CHECK_THROWS_AS(RunConfig::from_json(bad), ValidationError);

  bad = valid_config();
  bad["fields"]["b1"] = -1.0;
  CHECK_THROWS_WITH_AS(RunConfig::from_json(bad), doctest::Contains("field 1"),
                       ValidationError);

  bad = valid_config();
  bad.erase("grid");
  CHECK_THROWS_AS(RunConfig::from_json(bad), ValidationError);

  bad = valid_config();
  bad["scenario"]["kind"] = "explode";
  CHECK_THROWS_AS(RunConfig::from_json(bad), ValidationError);

  bad = valid_config();
  bad["scenario"]["knobs"]["alpha"] = 0.0;  // blowup knob on scattering run
  CHECK_THROWS_AS(RunConfig::from_json(bad), ValidationError);
}

TEST_CASE("initial data families") {
  Grid2D g = Grid2D::make(128, 12.0);
  InitialData d;
  d.family = "gaussian";
  d.sigma = 1.0;
  d.amplitude = 2.0;
  WaveField f = d.build(g);
  CHECK(max_abs(f) == doctest::Approx(2.0).epsilon(1e-10));

  d.h_theta_target = 0.05;
  WaveField s = d.build(g);
  // Target norm overrides the amplitude.
  CHECK(integral_abs2(s) < integral_abs2(f));

  d.family = "nope";
  CHECK_THROWS_AS(d.build(g), ValidationError);
}

TEST_CASE("diagnostics csv round trip") {
  std::vector<DiagnosticsRecord> recs;
  CHECK(diagnostics_csv(recs) ==
        "t,mass,energy,dilation_A,variance,potential_V,grad_norm,"
        "h_theta_11,tail_fraction,boundary_mass_fraction\n");

  DiagnosticsRecord r;
  r.t = 1.0 / 3.0;
  r.mass = std::numbers::pi;
  r.energy = -32.0 * std::numbers::pi / 9.0;
  r.dilation_A = 1e-17;
  r.variance = 5.0;
  r.potential_V = 0.1234567890123456789;
  r.grad_norm = 2.0;
  r.h_theta_11 = 0.05;
  r.tail_fraction = 1e-300;
  r.boundary_mass_fraction = 0.0;
  recs.push_back(r);

  std::string text = diagnostics_csv(recs);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);

  std::vector<DiagnosticsRecord> back = parse_diagnostics_csv(text);
  REQUIRE(back.size() == 1);
  CHECK(back[0].t == r.t);  // 17 significant digits: exact round trip
  CHECK(back[0].mass == r.mass);
  CHECK(back[0].energy == r.energy);
  CHECK(back[0].dilation_A == r.dilation_A);
  CHECK(back[0].potential_V == r.potential_V);
  CHECK(back[0].tail_fraction == r.tail_fraction);

  // Determinism: same records, same bytes.
  CHECK(diagnostics_csv(recs) == text);
}

TEST_SUITE_END();
