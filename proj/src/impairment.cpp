#include "iqsim/impairment.hpp"

#include "iqsim/errors.hpp"
#include "iqsim/waveforms.hpp"

#include <cmath>

namespace iqsim {

IqiParams iqi_params(double gain_imbalance_db, double theta_rad) {
    IqiParams p;
    p.gain_imbalance_db = gain_imbalance_db;
    p.theta_rad = theta_rad;
    const double eps = std::pow(10.0, gain_imbalance_db / 20.0);
    const Complex nu_raw = (1.0 - eps * std::polar(1.0, -theta_rad)) / 2.0;
    p.mu = 1.0 - std::conj(nu_raw);
    // Re-derive nu from mu (exact by Sterbenz) so that mu + conj(nu) == 1
    // holds bit-exactly, not just to rounding.
    p.nu = 1.0 - std::conj(p.mu);
    return p;
}

ObservationPair mix_baseband(std::span<const Complex> s, std::span<const Complex> i,
                             const IqiParams& params) {
    if (s.size() != i.size())
        throw DimensionError("mix_baseband: stream length mismatch");
    const std::size_t n = s.size();
    ObservationPair obs;
    obs.truth_s_in_d.resize(n);
    obs.truth_i_in_d.resize(n);
    obs.truth_s_in_g.resize(n);
    obs.truth_i_in_g.resize(n);
    obs.d.resize(n);
    obs.g.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        obs.truth_s_in_d[k] = params.mu * s[k];
        obs.truth_i_in_d[k] = params.nu * std::conj(i[k]);
        obs.truth_s_in_g[k] = params.nu * std::conj(s[k]);
        obs.truth_i_in_g[k] = params.mu * i[k];
        obs.d[k] = obs.truth_s_in_d[k] + obs.truth_i_in_d[k];
        obs.g[k] = obs.truth_s_in_g[k] + obs.truth_i_in_g[k];
    }
    return obs;
}

double image_rejection_ratio_db(const IqiParams& params) {
    const double mu2 = std::norm(params.mu);
    const double nu2 = std::norm(params.nu);
    if (nu2 == 0.0)
        return std::numeric_limits<double>::infinity();
    if (mu2 == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(mu2 / nu2);
}

namespace {

double bessel_i0(double x) {
    // power series; converges quickly for the argument range used here
    double term = 1.0, sum = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum;
}

// Kaiser-windowed sinc low-pass, odd length, unit DC gain.
// cutoff is in cycles per sample. beta 5.653 gives ~60 dB stopband.
std::vector<double> design_lowpass(int taps, double cutoff) {
    constexpr double kBeta = 5.653;
    std::vector<double> h(static_cast<std::size_t>(taps));
    const double mid = (taps - 1) / 2.0;
    const double i0b = bessel_i0(kBeta);
    double sum = 0.0;
    for (int k = 0; k < taps; ++k) {
        const double t = k - mid;
        const double x = 2.0 * cutoff * t;
        const double sinc = (t == 0.0) ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
        const double r = 2.0 * t / (taps - 1);
        const double w = bessel_i0(kBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0b;
        h[static_cast<std::size_t>(k)] = 2.0 * cutoff * sinc * w;
        sum += h[static_cast<std::size_t>(k)];
    }
    for (double& v : h)
        v /= sum;
    return h;
}

// Full convolution of a complex stream with real taps.
ComplexVector convolve(const ComplexVector& x, const std::vector<double>& h) {
    ComplexVector y(x.size() + h.size() - 1, Complex{0.0, 0.0});
    for (std::size_t t = 0; t < x.size(); ++t) {
        const Complex v = x[t];
        if (v == Complex{0.0, 0.0})
            continue;
        for (std::size_t k = 0; k < h.size(); ++k)
            y[t + k] += v * h[k];
    }
    return y;
}

struct BranchPair {
    ComplexVector d;
    ComplexVector g;
};

// One pass through the analog-reference chain: zero-stuff + interpolate,
// modulate to +-f_IF, apply the imbalanced mixing, digitally down-convert
// both branches, low-pass and decimate back to the symbol grid.
BranchPair chain_run(std::span<const Complex> s, std::span<const Complex> i,
                     const IqiParams& params, const IfChainConfig& cfg,
                     const std::vector<double>& interp, const std::vector<double>& lpf) {
    const int r_os = cfg.oversample_factor;
    const std::size_t n = s.size();
    const std::size_t len_os = n * static_cast<std::size_t>(r_os);

    ComplexVector s_zs(len_os, Complex{0.0, 0.0});
    ComplexVector i_zs(len_os, Complex{0.0, 0.0});
    const double gain = static_cast<double>(r_os);
    for (std::size_t k = 0; k < n; ++k) {
        s_zs[k * r_os] = gain * s[k];
        i_zs[k * r_os] = gain * i[k];
    }
    ComplexVector s_up = convolve(s_zs, interp);
    ComplexVector i_up = convolve(i_zs, interp);

    const std::size_t len_up = s_up.size();
    const Complex step = std::polar(1.0, 2.0 * M_PI * cfg.f_if_norm);
    Complex carrier{1.0, 0.0};
    ComplexVector x_d(len_up), x_g(len_up);
    for (std::size_t m = 0; m < len_up; ++m) {
        const Complex r_free = s_up[m] * carrier + i_up[m] * std::conj(carrier);
        const Complex r_if = params.mu * r_free + params.nu * std::conj(r_free);
        x_d[m] = r_if * std::conj(carrier);
        x_g[m] = r_if * carrier;
        carrier *= step;
        if ((m & 0xfffu) == 0xfffu)
            carrier /= std::abs(carrier);
    }

    const ComplexVector d_filt = convolve(x_d, lpf);
    const ComplexVector g_filt = convolve(x_g, lpf);

    const std::size_t delay = (interp.size() - 1) / 2 + (lpf.size() - 1) / 2;
    BranchPair out;
    out.d.resize(n);
    out.g.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t t = k * r_os + delay;
        out.d[k] = d_filt[t];
        out.g[k] = g_filt[t];
    }
    return out;
}

} // namespace

int if_chain_transient(const IfChainConfig& cfg) {
    const int taps = cfg.lpf_taps | 1;
    return (2 * taps + cfg.oversample_factor - 1) / cfg.oversample_factor;
}

ObservationPair if_chain_reference(std::span<const Complex> s, std::span<const Complex> i,
                                   const IqiParams& params, const IfChainConfig& cfg) {
    if (s.size() != i.size())
        throw DimensionError("if_chain_reference: stream length mismatch");
    if (cfg.oversample_factor < 8)
        throw ModelMismatchError("if_chain_reference: oversample_factor must be >= 8",
                                 std::numeric_limits<double>::quiet_NaN());
    const double band = 0.5 / cfg.oversample_factor; // symbol Nyquist, oversampled units
    if (!(cfg.f_if_norm >= 2.0 * band && cfg.f_if_norm + band < 0.5))
        throw ModelMismatchError(
            "if_chain_reference: f_if_norm must lie in [1/oversample, 0.5 - 0.5/oversample)",
            std::numeric_limits<double>::quiet_NaN());
    if (cfg.lpf_taps < 31)
        throw ModelMismatchError("if_chain_reference: lpf_taps must be >= 31",
                                 std::numeric_limits<double>::quiet_NaN());

    const int taps = cfg.lpf_taps | 1; // linear phase with integer group delay
    const std::vector<double> interp = design_lowpass(taps, band);
    const std::vector<double> lpf = interp;

    // The chain is additive in (s, i); per-component runs give the ground
    // truth split and their sum defines the observed branches.
    const std::size_t n = s.size();
    const ComplexVector zeros(n, Complex{0.0, 0.0});
    const BranchPair s_only = chain_run(s, zeros, params, cfg, interp, lpf);
    const BranchPair i_only = chain_run(zeros, i, params, cfg, interp, lpf);

    ObservationPair obs;
    obs.truth_s_in_d = s_only.d;
    obs.truth_s_in_g = s_only.g;
    obs.truth_i_in_d = i_only.d;
    obs.truth_i_in_g = i_only.g;
    obs.d.resize(n);
    obs.g.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        obs.d[k] = obs.truth_s_in_d[k] + obs.truth_i_in_d[k];
        obs.g[k] = obs.truth_s_in_g[k] + obs.truth_i_in_g[k];
    }

    if (cfg.self_check) {
        const ObservationPair bb = mix_baseband(s, i, params);
        const std::size_t skip = static_cast<std::size_t>(if_chain_transient(cfg));
        if (n > 2 * skip + 8) {
            double err = 0.0, ref = 0.0;
            for (std::size_t k = skip; k < n - skip; ++k) {
                err += std::norm(obs.d[k] - bb.d[k]) + std::norm(obs.g[k] - bb.g[k]);
                ref += std::norm(bb.d[k]) + std::norm(bb.g[k]);
            }
            if (ref > 0.0) {
                const double dev_db = 10.0 * std::log10(err / ref);
                if (!(dev_db <= cfg.check_tol_db))
                    throw ModelMismatchError(
                        "if_chain_reference: deviation from baseband model is " +
                            std::to_string(dev_db) + " dB (tolerance " +
                            std::to_string(cfg.check_tol_db) +
                            " dB); check oversampling, filter bandwidth and input occupancy",
                        dev_db);
            }
        }
    }
    return obs;
}

ComplexVector make_interference(std::size_t length, double sir_in_db, double signal_power,
                                const ChannelConfig& chan, Rng& rng, double noise_variance) {
    if (length < 1)
        throw Error("make_interference: length must be >= 1");
    if (signal_power < 0.0 || noise_variance < 0.0)
        throw Error("make_interference: powers must be >= 0");
    const double target = signal_power * std::pow(10.0, -sir_in_db / 10.0);
    const double scale = std::sqrt(target);
    ComplexVector symbols = qam64_symbols(length, rng);
    const FadingProcess fading = jakes_fading(chan, length, rng);
    ComplexVector noise = awgn(length, noise_variance, rng);
    ComplexVector out(length);
    for (std::size_t k = 0; k < length; ++k)
        out[k] = scale * fading.coefficients[k] * symbols[k] + noise[k];
    return out;
}

double relative_error_db(std::span<const Complex> a, std::span<const Complex> ref,
                         std::size_t skip_edges) {
    if (a.size() != ref.size())
        throw DimensionError("relative_error_db: length mismatch");
    if (a.size() <= 2 * skip_edges)
        throw DimensionError("relative_error_db: nothing left after edge trimming");
    double err = 0.0, den = 0.0;
    for (std::size_t k = skip_edges; k < a.size() - skip_edges; ++k) {
        err += std::norm(a[k] - ref[k]);
        den += std::norm(ref[k]);
    }
    if (den == 0.0)
        throw DegenerateInputError("relative_error_db: zero-power reference");
    if (err == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(err / den);
}

} // namespace iqsim
