#pragma once

#include <functional>

#include "icq/grid.hpp"

namespace icq {

// Transform convention (continuum): F(f)(xi) = int e^{-i x.xi} f dx,
// inverse with the (2pi)^{-2} factor. Discretely: forward = h^2 * DFT,
// inverse = IDFT / (h^2 n^2), which makes the round trip the identity and
// Parseval exact: h^2 sum|f|^2 = (2pi)^{-2} (pi/L)^2 sum|fhat|^2.
// The constant phase e^{i k L} per axis from the x = -L origin is dropped;
// every consumer is a diagonal multiplier or a norm, where it cancels.

SpectralField forward_fft(const WaveField& f);
WaveField inverse_fft(const SpectralField& s);

/// Apply a frequency multiplier m(k1, k2) in place of fft -> m -> ifft.
WaveField apply_multiplier(const WaveField& f,
                           const std::function<cplx(double, double)>& m);

/// Same, but reusing an already transformed field.
WaveField inverse_with_multiplier(const SpectralField& s,
                                  const std::function<cplx(double, double)>& m);

}  // namespace icq
