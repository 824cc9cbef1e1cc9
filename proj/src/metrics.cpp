#include "iqsim/metrics.hpp"

#include "iqsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace iqsim {

double output_sir_closed_form(const IqiParams& truth, const IqiEstimate& est, double sir_in_db) {
    const Complex c_signal = std::conj(est.mu_hat) * truth.mu - est.nu_hat * std::conj(truth.nu);
    const Complex c_interf = std::conj(est.mu_hat) * truth.nu - est.nu_hat * std::conj(truth.mu);
    const double ps = std::norm(c_signal);
    const double pi = std::norm(c_interf);
    if (pi == 0.0)
        return std::numeric_limits<double>::infinity();
    if (ps == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ps / pi) + sir_in_db;
}

double output_sir_empirical(const ObservationPair& obs, const IqiEstimate& est) {
    if (obs.size() == 0)
        throw DegenerateInputError("output_sir_empirical: empty observation");
    // Compensation is linear in (d, g), so running it on the per-component
    // truth streams yields exactly the signal and interference parts of s_hat.
    const ComplexVector s_part = compensate(obs.truth_s_in_d, obs.truth_s_in_g, est);
    const ComplexVector i_part = compensate(obs.truth_i_in_d, obs.truth_i_in_g, est);
    const double ps = mean_power(s_part);
    const double pi = mean_power(i_part);
    if (!std::isfinite(ps) || !std::isfinite(pi))
        throw DegenerateInputError("output_sir_empirical: non-finite component power");
    if (ps == 0.0)
        throw DegenerateInputError("output_sir_empirical: zero-power signal component");
    if (pi == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ps / pi);
}

NmseResult estimator_nmse(const IqiEstimate& est, const IqiParams& truth) {
    NmseResult r;
    const double err = std::norm(est.nu_hat - truth.nu);
    const double ref = std::norm(truth.nu);
    if (ref == 0.0) {
        r.value = err;
        r.absolute = true;
    } else {
        r.value = err / ref;
    }
    return r;
}

double cap_sir_db(double sir_db) { return std::min(sir_db, kSirCapDb); }

CdfCurve build_cdf(std::vector<double> samples) {
    if (samples.empty())
        throw DegenerateInputError("build_cdf: no samples");
    std::sort(samples.begin(), samples.end());
    CdfCurve curve;
    const std::size_t n = samples.size();
    curve.values = std::move(samples);
    curve.probabilities.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        curve.probabilities[k] = static_cast<double>(k + 1) / static_cast<double>(n);
    return curve;
}

double quantile(std::vector<double> samples, double q) {
    if (samples.empty())
        throw DegenerateInputError("quantile: no samples");
    std::sort(samples.begin(), samples.end());
    const double rank = q * static_cast<double>(samples.size());
    std::size_t idx = static_cast<std::size_t>(std::ceil(rank));
    idx = std::min(std::max<std::size_t>(idx, 1), samples.size());
    return samples[idx - 1];
}

} // namespace iqsim
