#include <benchmark/benchmark.h>

#include "icq/evolve.hpp"
#include "icq/fft.hpp"
#include "icq/polar.hpp"

using namespace icq;

namespace {

WaveField test_field(int n) {
  Grid2D g = Grid2D::make(n, 12.0);
  return sample(g, [](double x1, double x2) {
    return std::exp(-(x1 * x1 + x2 * x2) / 2.0) * cplx(1.0, 0.3);
  });
}

void bm_fft_roundtrip(benchmark::State& state) {
  WaveField f = test_field(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    WaveField back = inverse_fft(forward_fft(f));
    benchmark::DoNotOptimize(back.v.data());
  }
}

void bm_strang_step(benchmark::State& state) {
  WaveField f = test_field(static_cast<int>(state.range(0)));
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 1e-3;
  cfg.K1 = CoefficientField::power_law(0.25, 1.0, +1, 0.9 * 12.0);
  cfg.K2 = CoefficientField::power_law(1.0, 1.0, +1, 0.9 * 12.0);
  for (auto _ : state) {
    Trajectory t = evolve(f, cfg, {}, -1);
    benchmark::DoNotOptimize(t.snapshots.back().v.data());
  }
}

void bm_polar_resample(benchmark::State& state) {
  WaveField f = test_field(static_cast<int>(state.range(0)));
  PolarGrid pg = PolarGrid::make(128, 12.0, 256);
  for (auto _ : state) {
    double nn = mixed_norm(f, pg, 8.0, 2.0);
    benchmark::DoNotOptimize(nn);
  }
}

BENCHMARK(bm_fft_roundtrip)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(bm_strang_step)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(bm_polar_resample)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
