#pragma once

#include "iqsim/estimation.hpp"
#include "iqsim/impairment.hpp"

#include <cstdint>

namespace iqsim {

/// Near-perfect cancellation samples are capped at this value when building
/// CDF curves for plotting/export; raw values are kept alongside.
constexpr double kSirCapDb = 80.0;

struct SirSample {
    double output_sir_db = 0.0;
    EstimationMethod method = EstimationMethod::Uncompensated;
    std::uint64_t trial = 0;
    std::uint64_t config_fingerprint = 0;
};

/// Empirical CDF: sorted sample values with probabilities rank/N
/// (right-continuous; infinite samples sort to the top).
struct CdfCurve {
    std::vector<double> values;
    std::vector<double> probabilities;
};

/// Post-compensation SIR predicted from the estimate alone:
/// 10 log10( |mu^*mu - nu nu^*|^2 / |mu^*nu - nu mu^*|^2 ) + sir_in_db.
/// +inf when the interference coefficient cancels exactly.
double output_sir_closed_form(const IqiParams& truth, const IqiEstimate& est, double sir_in_db);

/// Post-compensation SIR measured from the ground-truth decomposition: the
/// compensator is applied separately to the signal-only and the
/// interference-only branch components and the output powers are compared.
double output_sir_empirical(const ObservationPair& obs, const IqiEstimate& est);

struct NmseResult {
    double value = 0.0;
    bool absolute = false; // true when truth nu == 0 (squared error reported)
};

/// |nu_hat - nu|^2 / |nu|^2; falls back to the absolute squared error
/// (flagged) when the true nu is zero.
NmseResult estimator_nmse(const IqiEstimate& est, const IqiParams& truth);

double cap_sir_db(double sir_db);

CdfCurve build_cdf(std::vector<double> samples);

/// Nearest-rank quantile of a sample set (q in [0,1]).
double quantile(std::vector<double> samples, double q);

} // namespace iqsim
