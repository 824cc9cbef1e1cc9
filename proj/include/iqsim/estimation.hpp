#pragma once

#include "iqsim/impairment.hpp"
#include "iqsim/numerics.hpp"
#include "iqsim/waveforms.hpp"

#include <string_view>

namespace iqsim {

enum class EstimationMethod {
    SubspaceProduct, // projected product estimate + closed-form inversion
    SubspaceLse,     // projected least-squares ratio + algebraic inversion
    Blind,           // same averaging on raw d(n), g*(n), no projection
    Uncompensated,   // identity estimate, pass-through
};

const char* method_name(EstimationMethod m);
bool parse_method(std::string_view name, EstimationMethod& out);

/// Training-period split: segments of length segment_len with
/// segments * segment_len == pilot_len. coherence_len is advisory only
/// (the span over which the fading coefficient is treated as constant).
struct SegmentationPlan {
    int segments = 1;
    int segment_len = 0;
    int coherence_len = 0;

    static SegmentationPlan for_pilot(int pilot_len, int segments, int coherence_len = 0);
};

/// Projected branch pair: w1 = Q d, w2 = Q g*, stacked across segments and
/// training periods. Each segment of length L contributes L-1 rows.
struct ProjectedPair {
    ComplexVector w1;
    ComplexVector w2;
};

struct IqiEstimate {
    Complex mu_hat{1.0, 0.0};
    Complex nu_hat{0.0, 0.0};
    Complex mu_nu_product{0.0, 0.0}; // intermediate estimate of mu*nu
    EstimationMethod method = EstimationMethod::Uncompensated;
    std::size_t samples_used = 0;
    bool clamped = false;
};

/// Identity estimate (mu=1, nu=0), used for the uncompensated baseline.
IqiEstimate identity_estimate();

/// Project one training segment: w1 = Q d_seg, w2 = Q conj(g_seg).
/// g_seg is the raw g stream; the conjugation happens inside.
ProjectedPair project_training(std::span<const Complex> d_seg, std::span<const Complex> g_seg,
                               const ProjectionBasis& basis);

/// Vertical concatenation of projected pairs. Throws on empty input.
ProjectedPair accumulate(std::span<const ProjectedPair> pairs);

/// w2^H w1 / ((w1+w2)^H (w1+w2)), an estimate of mu*nu = nu - |nu|^2.
Complex estimate_product(const ProjectedPair& pair);

struct NuSolution {
    Complex nu;
    Complex mu;
    bool clamped = false;
};

/// Closed-form inversion of the product estimate:
/// nu = 1/2 - 1/2 sqrt(1 - 4(Re{p} + Im{p}^2)) + j Im{p}, mu = 1 - nu*.
/// A negative discriminant is clamped to zero and flagged.
NuSolution solve_nu(Complex product);

/// w2^H w1 / (w2^H w2), the least-squares estimate of nu / mu*.
Complex estimate_lse_ratio(const ProjectedPair& pair);

/// Solve nu = r mu* with mu = 1 - nu*: nu = r / (1 + r).
/// Throws SingularRatioError at r == -1.
NuSolution solve_nu_from_ratio(Complex ratio);

/// Blind baseline: product + inversion applied to all supplied samples with
/// w1 := d and w2 := conj(g) (no projection).
IqiEstimate estimate_blind(std::span<const Complex> d, std::span<const Complex> g);

/// s_hat(n) = (mu^* d(n) - nu g^*(n)) / (|mu|^2 - |nu|^2).
/// Throws CompensationSingularError when the denominator is within 1e-9 of 0.
ComplexVector compensate(std::span<const Complex> d, std::span<const Complex> g,
                         const IqiEstimate& est);

/// Full data-aided run over `frames` frames of obs: per frame and segment,
/// project onto the cached pilot-segment bases, concatenate, then invert via
/// the selected method (SubspaceProduct or SubspaceLse).
IqiEstimate run_subspace_estimator(const ObservationPair& obs, const FrameConfig& cfg,
                                   const SegmentationPlan& plan, int frames,
                                   EstimationMethod method = EstimationMethod::SubspaceProduct);

} // namespace iqsim
