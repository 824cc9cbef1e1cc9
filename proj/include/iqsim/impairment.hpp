#pragma once

#include "iqsim/channel.hpp"
#include "iqsim/numerics.hpp"
#include "iqsim/rng.hpp"

#include <limits>

namespace iqsim {

/// Receive-mixer imbalance pair and the derived mixing coefficients
/// mu = (1 + eps e^{j theta})/2, nu = (1 - eps e^{-j theta})/2 with
/// eps = 10^(gain_imbalance_db/20). mu == 1 - conj(nu) holds bit-exactly.
struct IqiParams {
    double gain_imbalance_db = 0.0;
    double theta_rad = 0.0;
    Complex mu{1.0, 0.0};
    Complex nu{0.0, 0.0};
};

IqiParams iqi_params(double gain_imbalance_db, double theta_rad);

/// The two digitized branch streams d(n) = mu s + nu i*, g(n) = mu i + nu s*,
/// with the ground-truth signal/interference split of each branch retained
/// so oracle metrics can measure post-compensation component powers.
struct ObservationPair {
    ComplexVector d;
    ComplexVector g;
    ComplexVector truth_s_in_d;
    ComplexVector truth_i_in_d;
    ComplexVector truth_s_in_g;
    ComplexVector truth_i_in_g;
    double sir_in_db = std::numeric_limits<double>::quiet_NaN();
    double snr_db = std::numeric_limits<double>::quiet_NaN();

    std::size_t size() const { return d.size(); }
};

/// Baseband-equivalent IQI mixing of a (noisy) desired stream and a (noisy)
/// interference stream. Throws DimensionError on length mismatch.
ObservationPair mix_baseband(std::span<const Complex> s, std::span<const Complex> i,
                             const IqiParams& params);

/// 10 log10(|mu|^2 / |nu|^2); +inf when nu == 0, -inf when mu == 0.
double image_rejection_ratio_db(const IqiParams& params);

/// Oversampled IF-chain reference simulator settings. f_if_norm is the IF in
/// cycles per oversampled sample. The interpolation and image-rejection
/// low-pass filters are Kaiser-windowed sinc designs with cutoff at the
/// symbol bandwidth. When self_check is set, the output is compared against
/// mix_baseband and a deviation above check_tol_db raises ModelMismatchError.
/// The check presumes input streams band-limited below the symbol Nyquist
/// with some margin (e.g. multitone at <= 0.25 cycles/symbol); full-band
/// streams cannot pass any realizable analog chain at -40 dB.
struct IfChainConfig {
    int oversample_factor = 16;
    double f_if_norm = 0.125;
    int lpf_taps = 127;
    bool self_check = true;
    double check_tol_db = -40.0;
};

/// Synthesizes the IQI-impaired low-IF signal at the oversampled rate
/// (complex exponentials at +-f_IF with imbalanced mixing), digitally
/// down-converts both branches, low-pass filters and decimates back to the
/// symbol rate. The result matches mix_baseband after transient removal.
ObservationPair if_chain_reference(std::span<const Complex> s, std::span<const Complex> i,
                                   const IqiParams& params, const IfChainConfig& cfg = {});

/// Symbols to discard at each stream edge before comparing IF-chain output.
int if_chain_transient(const IfChainConfig& cfg);

/// Independently faded, noisy 64-QAM interference stream scaled so the faded
/// signal part has power signal_power / 10^(sir_in_db/10); noise_variance is
/// the receiver AWGN density on this branch.
ComplexVector make_interference(std::size_t length, double sir_in_db, double signal_power,
                                const ChannelConfig& chan, Rng& rng, double noise_variance = 0.0);

/// 10 log10( sum|a-ref|^2 / sum|ref|^2 ) with skip_edges entries dropped at
/// both ends; -inf for an exact match.
double relative_error_db(std::span<const Complex> a, std::span<const Complex> ref,
                         std::size_t skip_edges = 0);

} // namespace iqsim
