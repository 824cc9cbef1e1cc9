#include "iqsim/channel.hpp"

#include "iqsim/errors.hpp"

#include <cmath>

namespace iqsim {

void ChannelConfig::validate() const {
    if (doppler_hz < 0.0)
        throw Error("ChannelConfig: doppler_hz must be >= 0");
    if (sample_time_s <= 0.0)
        throw Error("ChannelConfig: sample_time_s must be > 0");
    if (oscillators < 8)
        throw Error("ChannelConfig: need at least 8 oscillators");
}

FadingProcess jakes_fading(const ChannelConfig& cfg, std::size_t length, Rng& rng) {
    cfg.validate();
    if (length < 1)
        throw Error("jakes_fading: length must be >= 1");

    const int m_osc = cfg.oscillators;
    const double omega_d = 2.0 * M_PI * cfg.doppler_hz * cfg.sample_time_s; // rad per sample
    const double scale = std::sqrt((cfg.unit_power ? 1.0 : 2.0) / m_osc);

    // Arrival angles on a deterministic grid in (0, pi/2) plus a random
    // offset; every oscillator gets independent phases on both quadratures.
    const double theta = rng.uniform(-M_PI, M_PI);
    std::vector<Complex> phasor_i(m_osc), phasor_q(m_osc), step_i(m_osc), step_q(m_osc);
    for (int m = 0; m < m_osc; ++m) {
        const double angle = (2.0 * M_PI * (m + 1) - M_PI + theta) / (4.0 * m_osc);
        step_i[m] = std::polar(1.0, omega_d * std::cos(angle));
        step_q[m] = std::polar(1.0, omega_d * std::sin(angle));
        phasor_i[m] = std::polar(1.0, rng.uniform(-M_PI, M_PI));
        phasor_q[m] = std::polar(1.0, rng.uniform(-M_PI, M_PI));
    }

    FadingProcess out;
    out.coefficients.resize(length);
    for (std::size_t n = 0; n < length; ++n) {
        double x = 0.0, y = 0.0;
        for (int m = 0; m < m_osc; ++m) {
            x += phasor_i[m].real();
            y += phasor_q[m].real();
            phasor_i[m] *= step_i[m];
            phasor_q[m] *= step_q[m];
        }
        out.coefficients[n] = Complex{scale * x, scale * y};
        if ((n & 0xfffu) == 0xfffu) {
            // keep the recurrence phasors on the unit circle
            for (int m = 0; m < m_osc; ++m) {
                phasor_i[m] /= std::abs(phasor_i[m]);
                phasor_q[m] /= std::abs(phasor_q[m]);
            }
        }
    }
    return out;
}

ComplexVector awgn(std::size_t length, double variance_per_sample, Rng& rng) {
    if (variance_per_sample < 0.0)
        throw Error("awgn: variance must be >= 0");
    ComplexVector out(length);
    if (variance_per_sample == 0.0)
        return out;
    for (std::size_t n = 0; n < length; ++n)
        out[n] = rng.complex_gaussian(variance_per_sample);
    return out;
}

ComplexVector apply_flat_fading(std::span<const Complex> symbols, const FadingProcess& fading) {
    if (symbols.size() != fading.coefficients.size())
        throw DimensionError("apply_flat_fading: stream length " + std::to_string(symbols.size()) +
                             " does not match fading length " +
                             std::to_string(fading.coefficients.size()));
    ComplexVector out(symbols.size());
    for (std::size_t n = 0; n < symbols.size(); ++n)
        out[n] = fading.coefficients[n] * symbols[n];
    return out;
}

} // namespace iqsim
