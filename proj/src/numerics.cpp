#include "iqsim/numerics.hpp"

#include "iqsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace iqsim {

Complex hermitian_dot(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size())
        throw DimensionError("hermitian_dot: length mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k)
        acc += std::conj(a[k]) * b[k];
    return acc;
}

double energy(std::span<const Complex> x) {
    double acc = 0.0;
    for (const Complex& v : x)
        acc += std::norm(v);
    return acc;
}

double mean_power(std::span<const Complex> x) {
    return x.empty() ? 0.0 : energy(x) / static_cast<double>(x.size());
}

ComplexVector matvec(const ComplexMatrix& m, std::span<const Complex> x) {
    if (x.size() != m.cols)
        throw DimensionError("matvec: vector length " + std::to_string(x.size()) +
                             " does not match matrix columns " + std::to_string(m.cols));
    ComplexVector y(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        Complex acc{0.0, 0.0};
        const Complex* row = m.data.data() + r * m.cols;
        for (std::size_t c = 0; c < m.cols; ++c)
            acc += row[c] * x[c];
        y[r] = acc;
    }
    return y;
}

ComplexMatrix null_projector(std::span<const Complex> pilot) {
    const std::size_t len = pilot.size();
    if (len < 2)
        throw InvalidPilotError("null_projector: pilot length must be >= 2, got " +
                                std::to_string(len));
    const double norm2 = energy(pilot);
    if (norm2 <= 0.0)
        throw InvalidPilotError("null_projector: zero-norm pilot");

    ComplexMatrix q(len, len);
    for (std::size_t r = 0; r < len; ++r) {
        for (std::size_t c = 0; c < len; ++c) {
            Complex v = -pilot[r] * std::conj(pilot[c]) / norm2;
            if (r == c)
                v += 1.0;
            q(r, c) = v;
        }
    }
    return q;
}

ProjectionBasis orthonormalize(const ComplexMatrix& projector) {
    const std::size_t len = projector.rows;
    if (projector.cols != len)
        throw DimensionError("orthonormalize: expected a square matrix");
    const std::size_t target = len - 1;

    double max_abs = 0.0;
    for (const Complex& v : projector.data)
        max_abs = std::max(max_abs, std::abs(v));
    const double tol = 1e-12 * max_abs;

    std::vector<ComplexVector> basis;
    basis.reserve(target);
    for (std::size_t r = 0; r < len && basis.size() < target; ++r) {
        ComplexVector v(projector.row(r).begin(), projector.row(r).end());
        // Two MGS sweeps keep the basis orthonormal to machine precision
        // even when candidate rows are nearly dependent.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (const ComplexVector& u : basis) {
                const Complex proj = hermitian_dot(u, v);
                for (std::size_t c = 0; c < len; ++c)
                    v[c] -= proj * u[c];
            }
        }
        const double nrm = std::sqrt(energy(v));
        if (nrm <= tol)
            continue;
        for (Complex& c : v)
            c /= nrm;
        basis.push_back(std::move(v));
    }

    if (basis.size() < target)
        throw RankError("orthonormalize: achieved rank " + std::to_string(basis.size()) +
                            " < required " + std::to_string(target),
                        basis.size());

    ProjectionBasis out;
    out.pilot_len = len;
    out.q = ComplexMatrix(target, len);
    for (std::size_t r = 0; r < target; ++r)
        std::copy(basis[r].begin(), basis[r].end(), out.q.data.begin() + r * len);
    return out;
}

ProjectionBasis pilot_basis(std::span<const Complex> pilot) {
    return orthonormalize(null_projector(pilot));
}

} // namespace iqsim
