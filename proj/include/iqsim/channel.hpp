#pragma once

#include "iqsim/numerics.hpp"
#include "iqsim/rng.hpp"

namespace iqsim {

/// Jakes-model fading parameters. oscillators is the number of sinusoids in
/// the sum-of-sinusoids realization. With unit_power the process has
/// E|alpha|^2 = 1; otherwise each quadrature carries unit variance
/// (E|alpha|^2 = 2).
struct ChannelConfig {
    double doppler_hz = 100.0;
    double sample_time_s = 2e-6;
    int oscillators = 16;
    bool unit_power = true;

    void validate() const;
};

/// Complex fading coefficients aligned with a sample stream.
struct FadingProcess {
    ComplexVector coefficients;
};

/// Rayleigh flat fading, sum-of-sinusoids with per-realization random phases
/// and a random arrival-angle offset. Autocorrelation approximates
/// J0(2 pi F_D tau); doppler_hz == 0 freezes the coefficient.
FadingProcess jakes_fading(const ChannelConfig& cfg, std::size_t length, Rng& rng);

/// i.i.d. circularly symmetric complex Gaussian, E|x|^2 = variance_per_sample.
ComplexVector awgn(std::size_t length, double variance_per_sample, Rng& rng);

/// Elementwise alpha(n) * x(n). Throws DimensionError on length mismatch.
ComplexVector apply_flat_fading(std::span<const Complex> symbols, const FadingProcess& fading);

} // namespace iqsim
