#include "icq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace icq {

namespace {

// One in-place plan pair per grid size, per thread. FFTW plan creation is
// not thread safe, so it is serialized; execution on the thread-local
// buffer is not shared.
struct PlanPair {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::size_t size = 0;

  ~PlanPair() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

std::mutex g_plan_mutex;

PlanPair& plans_for(int n) {
  thread_local std::map<int, PlanPair> cache;
  PlanPair& p = cache[n];
  if (!p.fwd) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    p.size = static_cast<std::size_t>(n) * n;
    p.buf = fftw_alloc_complex(p.size);
    // FFTW_ESTIMATE: deterministic plans, identical results run to run.
    p.fwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  return p;
}

void load(PlanPair& p, const std::vector<cplx>& v) {
  for (std::size_t i = 0; i < p.size; ++i) {
    p.buf[i][0] = v[i].real();
    p.buf[i][1] = v[i].imag();
  }
}

void store(const PlanPair& p, std::vector<cplx>& v, double scale) {
  for (std::size_t i = 0; i < p.size; ++i)
    v[i] = cplx(p.buf[i][0] * scale, p.buf[i][1] * scale);
}

}  // namespace

SpectralField forward_fft(const WaveField& f) {
  PlanPair& p = plans_for(f.grid.n);
  load(p, f.v);
  fftw_execute(p.fwd);
  SpectralField out(f.grid);
  store(p, out.c, f.grid.cell_area());
  return out;
}

WaveField inverse_fft(const SpectralField& s) {
  PlanPair& p = plans_for(s.grid.n);
  load(p, s.c);
  fftw_execute(p.bwd);
  WaveField out(s.grid);
  store(p, out.v, 1.0 / (s.grid.cell_area() * s.grid.size()));
  return out;
}

WaveField inverse_with_multiplier(const SpectralField& s,
                                  const std::function<cplx(double, double)>& m) {
  SpectralField tmp(s.grid);
  const Grid2D& g = s.grid;
  for (int i = 0; i < g.n; ++i) {
    double k2 = g.wavenumber(i);
    for (int j = 0; j < g.n; ++j) {
      std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
      tmp.c[idx] = m(g.wavenumber(j), k2) * s.c[idx];
    }
  }
  return inverse_fft(tmp);
}

WaveField apply_multiplier(const WaveField& f,
                           const std::function<cplx(double, double)>& m) {
  return inverse_with_multiplier(forward_fft(f), m);
}

}  // namespace icq
