#include "iqsim/estimation.hpp"

#include "iqsim/errors.hpp"

#include <cmath>

namespace iqsim {

const char* method_name(EstimationMethod m) {
    switch (m) {
    case EstimationMethod::SubspaceProduct:
        return "subspace-product";
    case EstimationMethod::SubspaceLse:
        return "subspace-lse";
    case EstimationMethod::Blind:
        return "blind";
    case EstimationMethod::Uncompensated:
        return "uncompensated";
    }
    return "unknown";
}

bool parse_method(std::string_view name, EstimationMethod& out) {
    for (EstimationMethod m :
         {EstimationMethod::SubspaceProduct, EstimationMethod::SubspaceLse,
          EstimationMethod::Blind, EstimationMethod::Uncompensated}) {
        if (name == method_name(m)) {
            out = m;
            return true;
        }
    }
    return false;
}

SegmentationPlan SegmentationPlan::for_pilot(int pilot_len, int segments, int coherence_len) {
    if (segments < 1)
        throw Error("SegmentationPlan: segments must be >= 1");
    if (pilot_len % segments != 0)
        throw Error("SegmentationPlan: segments must divide the pilot length");
    SegmentationPlan plan;
    plan.segments = segments;
    plan.segment_len = pilot_len / segments;
    plan.coherence_len = coherence_len;
    if (plan.segment_len < 2)
        throw Error("SegmentationPlan: segment length must be >= 2");
    return plan;
}

IqiEstimate identity_estimate() {
    IqiEstimate est;
    est.method = EstimationMethod::Uncompensated;
    return est;
}

ProjectedPair project_training(std::span<const Complex> d_seg, std::span<const Complex> g_seg,
                               const ProjectionBasis& basis) {
    if (d_seg.size() != basis.pilot_len || g_seg.size() != basis.pilot_len)
        throw DimensionError("project_training: segment length does not match basis pilot_len");
    ComplexVector g_conj(g_seg.size());
    for (std::size_t k = 0; k < g_seg.size(); ++k)
        g_conj[k] = std::conj(g_seg[k]);
    ProjectedPair out;
    out.w1 = matvec(basis.q, d_seg);
    out.w2 = matvec(basis.q, g_conj);
    return out;
}

ProjectedPair accumulate(std::span<const ProjectedPair> pairs) {
    if (pairs.empty())
        throw DegenerateInputError("accumulate: no projected pairs supplied");
    ProjectedPair out;
    std::size_t total = 0;
    for (const ProjectedPair& p : pairs)
        total += p.w1.size();
    out.w1.reserve(total);
    out.w2.reserve(total);
    for (const ProjectedPair& p : pairs) {
        if (p.w1.size() != p.w2.size())
            throw DimensionError("accumulate: w1/w2 length mismatch");
        out.w1.insert(out.w1.end(), p.w1.begin(), p.w1.end());
        out.w2.insert(out.w2.end(), p.w2.begin(), p.w2.end());
    }
    return out;
}

Complex estimate_product(const ProjectedPair& pair) {
    if (pair.w1.empty() || pair.w1.size() != pair.w2.size())
        throw DimensionError("estimate_product: need equal nonzero lengths");
    const Complex num = hermitian_dot(pair.w2, pair.w1);
    double den = 0.0;
    for (std::size_t k = 0; k < pair.w1.size(); ++k)
        den += std::norm(pair.w1[k] + pair.w2[k]);
    if (den == 0.0)
        throw DegenerateInputError("estimate_product: w1 + w2 has zero norm");
    if (!std::isfinite(num.real()) || !std::isfinite(num.imag()) || !std::isfinite(den))
        throw DegenerateInputError("estimate_product: non-finite input samples");
    return num / den;
}

namespace {

NuSolution finish_solution(Complex nu_raw, bool clamped) {
    NuSolution sol;
    sol.mu = 1.0 - std::conj(nu_raw);
    // see iqi_params: re-derive nu so mu + conj(nu) == 1 bit-exactly
    sol.nu = 1.0 - std::conj(sol.mu);
    sol.clamped = clamped;
    return sol;
}

} // namespace

NuSolution solve_nu(Complex product) {
    const double re = product.real();
    const double im = product.imag();
    double disc = 1.0 - 4.0 * (re + im * im);
    bool clamped = false;
    if (disc < 0.0) {
        disc = 0.0;
        clamped = true;
    }
    const Complex nu_raw{0.5 - 0.5 * std::sqrt(disc), im};
    return finish_solution(nu_raw, clamped);
}

Complex estimate_lse_ratio(const ProjectedPair& pair) {
    if (pair.w1.empty() || pair.w1.size() != pair.w2.size())
        throw DimensionError("estimate_lse_ratio: need equal nonzero lengths");
    const double den = energy(pair.w2);
    if (den == 0.0)
        throw DegenerateInputError("estimate_lse_ratio: w2 has zero norm");
    const Complex num = hermitian_dot(pair.w2, pair.w1);
    if (!std::isfinite(num.real()) || !std::isfinite(num.imag()) || !std::isfinite(den))
        throw DegenerateInputError("estimate_lse_ratio: non-finite input samples");
    return num / den;
}

NuSolution solve_nu_from_ratio(Complex ratio) {
    const Complex one_plus = 1.0 + ratio;
    if (std::abs(one_plus) < 1e-12)
        throw SingularRatioError("solve_nu_from_ratio: ratio == -1 is singular");
    return finish_solution(ratio / one_plus, false);
}

IqiEstimate estimate_blind(std::span<const Complex> d, std::span<const Complex> g) {
    if (d.empty() || d.size() != g.size())
        throw DimensionError("estimate_blind: need equal nonzero lengths");
    ProjectedPair pair;
    pair.w1.assign(d.begin(), d.end());
    pair.w2.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        pair.w2[k] = std::conj(g[k]);
    const Complex product = estimate_product(pair);
    const NuSolution sol = solve_nu(product);
    IqiEstimate est;
    est.mu_hat = sol.mu;
    est.nu_hat = sol.nu;
    est.mu_nu_product = product;
    est.method = EstimationMethod::Blind;
    est.samples_used = d.size();
    est.clamped = sol.clamped;
    return est;
}

ComplexVector compensate(std::span<const Complex> d, std::span<const Complex> g,
                         const IqiEstimate& est) {
    if (d.size() != g.size())
        throw DimensionError("compensate: stream length mismatch");
    const double den = std::norm(est.mu_hat) - std::norm(est.nu_hat);
    if (std::abs(den) < 1e-9)
        throw CompensationSingularError("compensate: |mu|^2 - |nu|^2 is within 1e-9 of zero");
    ComplexVector s_hat(d.size());
    const Complex mu_conj = std::conj(est.mu_hat);
    for (std::size_t k = 0; k < d.size(); ++k)
        s_hat[k] = (mu_conj * d[k] - est.nu_hat * std::conj(g[k])) / den;
    return s_hat;
}

IqiEstimate run_subspace_estimator(const ObservationPair& obs, const FrameConfig& cfg,
                                   const SegmentationPlan& plan, int frames,
                                   EstimationMethod method) {
    cfg.validate();
    if (method != EstimationMethod::SubspaceProduct && method != EstimationMethod::SubspaceLse)
        throw Error("run_subspace_estimator: method must be a subspace variant");
    if (frames < 1)
        throw Error("run_subspace_estimator: frames must be >= 1");
    if (plan.segments * plan.segment_len != cfg.pilot_len)
        throw DimensionError("run_subspace_estimator: plan does not cover the pilot");
    const std::size_t frame_len = static_cast<std::size_t>(cfg.frame_len());
    if (obs.size() < static_cast<std::size_t>(frames) * frame_len)
        throw DimensionError("run_subspace_estimator: observation shorter than requested frames");

    // The pilot is pre-known, so the per-segment bases are computed once and
    // reused across all frames.
    const ComplexVector pilot = zadoff_chu(cfg.pilot_len, cfg.zc_root);
    std::vector<ProjectionBasis> bases;
    bases.reserve(static_cast<std::size_t>(plan.segments));
    const std::size_t seg_len = static_cast<std::size_t>(plan.segment_len);
    for (int k = 0; k < plan.segments; ++k)
        bases.push_back(pilot_basis(
            std::span<const Complex>(pilot.data() + static_cast<std::size_t>(k) * seg_len,
                                     seg_len)));

    ProjectedPair acc;
    const std::size_t rows = static_cast<std::size_t>(frames) *
                             (static_cast<std::size_t>(cfg.pilot_len) -
                              static_cast<std::size_t>(plan.segments));
    acc.w1.reserve(rows);
    acc.w2.reserve(rows);
    for (int f = 0; f < frames; ++f) {
        const std::size_t base = static_cast<std::size_t>(f) * frame_len;
        for (int k = 0; k < plan.segments; ++k) {
            const std::size_t off = base + static_cast<std::size_t>(k) * seg_len;
            ProjectedPair p = project_training(
                std::span<const Complex>(obs.d.data() + off, seg_len),
                std::span<const Complex>(obs.g.data() + off, seg_len), bases[static_cast<std::size_t>(k)]);
            acc.w1.insert(acc.w1.end(), p.w1.begin(), p.w1.end());
            acc.w2.insert(acc.w2.end(), p.w2.begin(), p.w2.end());
        }
    }

    IqiEstimate est;
    est.method = method;
    est.samples_used = acc.w1.size();
    if (method == EstimationMethod::SubspaceProduct) {
        const Complex product = estimate_product(acc);
        const NuSolution sol = solve_nu(product);
        est.mu_hat = sol.mu;
        est.nu_hat = sol.nu;
        est.mu_nu_product = product;
        est.clamped = sol.clamped;
    } else {
        const Complex ratio = estimate_lse_ratio(acc);
        const NuSolution sol = solve_nu_from_ratio(ratio);
        est.mu_hat = sol.mu;
        est.nu_hat = sol.nu;
        est.mu_nu_product = sol.mu * sol.nu;
        est.clamped = sol.clamped;
    }
    return est;
}

} // namespace iqsim
