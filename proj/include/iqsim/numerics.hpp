#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace iqsim {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix; just enough linear algebra for the
/// pilot null-space projection, nothing general purpose.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    ComplexVector data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Complex& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<const Complex> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Orthonormal basis of the subspace orthogonal to a pilot: (L-1) x L matrix
/// Q with Q Q^H = I and Q p = 0 for the pilot p it was built from.
struct ProjectionBasis {
    ComplexMatrix q;
    std::size_t pilot_len = 0;
};

/// a^H b (first argument conjugated). Throws DimensionError on length mismatch.
Complex hermitian_dot(std::span<const Complex> a, std::span<const Complex> b);

/// Sum of |x|^2 over the vector.
double energy(std::span<const Complex> x);

/// Mean of |x|^2; 0 for an empty vector.
double mean_power(std::span<const Complex> x);

/// y = M x. Throws DimensionError if x does not match M's column count.
ComplexVector matvec(const ComplexMatrix& m, std::span<const Complex> x);

/// Projector onto the orthogonal complement of the pilot:
/// I - p p^H / (p^H p). Hermitian and idempotent by construction.
/// Throws InvalidPilotError for pilots of norm 0 or length < 2.
ComplexMatrix null_projector(std::span<const Complex> pilot);

/// Modified Gram-Schmidt over the rows of a rank-(L-1) projector. Rows are
/// processed in natural order; a row whose residual norm falls below
/// 1e-12 * max|entry| is skipped; collection stops after L-1 rows.
/// Throws RankError (with the achieved rank) if fewer rows survive.
ProjectionBasis orthonormalize(const ComplexMatrix& projector);

/// Convenience: null_projector followed by orthonormalize.
ProjectionBasis pilot_basis(std::span<const Complex> pilot);

} // namespace iqsim
