#include "iqsim/numerics.hpp"

#include "iqsim/errors.hpp"
#include "iqsim/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace iqsim;

namespace {

ComplexVector random_pilot(std::size_t len, Rng& rng) {
    ComplexVector p(len);
    for (Complex& v : p)
        v = rng.complex_gaussian(1.0);
    return p;
}

double max_abs_dev_from_identity(const ComplexMatrix& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            worst = std::max(worst, std::abs(m(r, c) - (r == c ? Complex{1.0, 0.0} : Complex{})));
    return worst;
}

ComplexMatrix gram(const ComplexMatrix& q) {
    ComplexMatrix g(q.rows, q.rows);
    for (std::size_t r = 0; r < q.rows; ++r)
        for (std::size_t c = 0; c < q.rows; ++c)
            g(r, c) = hermitian_dot(q.row(c), q.row(r)); // <row_c, row_r> = row_r row_c^H
    return g;
}

} // namespace

TEST_CASE("hermitian_dot conjugates the first argument") {
    CHECK(hermitian_dot(ComplexVector{{1, 0}}, ComplexVector{{1, 0}}) == Complex{1.0, 0.0});
    CHECK(hermitian_dot(ComplexVector{{0, 1}}, ComplexVector{{0, 1}}) == Complex{1.0, 0.0});
    // conj(1+j)*1 + conj(2)*j = (1-j) + 2j = 1+j
    const Complex got = hermitian_dot(ComplexVector{{1, 1}, {2, 0}}, ComplexVector{{1, 0}, {0, 1}});
    CHECK(std::abs(got - Complex{1.0, 1.0}) < 1e-15);
    CHECK_THROWS_AS(hermitian_dot(ComplexVector(2), ComplexVector(3)), DimensionError);
}

TEST_CASE("null_projector matches hand-computed cases") {
    SUBCASE("p = [1, 1]") {
        const ComplexMatrix q = null_projector(ComplexVector{{1, 0}, {1, 0}});
        CHECK(std::abs(q(0, 0) - Complex{0.5, 0.0}) < 1e-15);
        CHECK(std::abs(q(0, 1) - Complex{-0.5, 0.0}) < 1e-15);
        CHECK(std::abs(q(1, 0) - Complex{-0.5, 0.0}) < 1e-15);
        CHECK(std::abs(q(1, 1) - Complex{0.5, 0.0}) < 1e-15);
    }
    SUBCASE("p = [1, 0]") {
        const ComplexMatrix q = null_projector(ComplexVector{{1, 0}, {0, 0}});
        CHECK(std::abs(q(0, 0)) < 1e-15);
        CHECK(std::abs(q(0, 1)) < 1e-15);
        CHECK(std::abs(q(1, 0)) < 1e-15);
        CHECK(std::abs(q(1, 1) - Complex{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("p = [1, j]") {
        const ComplexVector p{{1, 0}, {0, 1}};
        const ComplexMatrix q = null_projector(p);
        CHECK(std::abs(q(0, 0) - Complex{0.5, 0.0}) < 1e-15);
        CHECK(std::abs(q(0, 1) - Complex{0.0, 0.5}) < 1e-15);
        CHECK(std::abs(q(1, 0) - Complex{0.0, -0.5}) < 1e-15);
        CHECK(std::abs(q(1, 1) - Complex{0.5, 0.0}) < 1e-15);
        const ComplexVector qp = matvec(q, p);
        CHECK(std::sqrt(energy(qp)) < 1e-15);
    }
}

TEST_CASE("null_projector rejects bad pilots") {
    CHECK_THROWS_AS(null_projector(ComplexVector{{0, 0}, {0, 0}}), InvalidPilotError);
    CHECK_THROWS_AS(null_projector(ComplexVector{{1, 0}}), InvalidPilotError);
}

TEST_CASE("null_projector is Hermitian, idempotent and annihilates the pilot") {
    Rng rng(0x11aa55u);
    for (std::size_t len : {2u, 4u, 8u, 16u, 33u, 64u}) {
        const ComplexVector p = random_pilot(len, rng);
        const ComplexMatrix q = null_projector(p);
        // Hermitian
        double herm = 0.0;
        for (std::size_t r = 0; r < len; ++r)
            for (std::size_t c = 0; c < len; ++c)
                herm = std::max(herm, std::abs(q(r, c) - std::conj(q(c, r))));
        CHECK(herm < 1e-10);
        // idempotent
        double idem = 0.0;
        for (std::size_t r = 0; r < len; ++r) {
            const ComplexVector row(q.row(r).begin(), q.row(r).end());
            ComplexVector qrow(len);
            for (std::size_t c = 0; c < len; ++c) {
                Complex acc{};
                for (std::size_t k = 0; k < len; ++k)
                    acc += q(r, k) * q(k, c);
                qrow[c] = acc;
            }
            for (std::size_t c = 0; c < len; ++c)
                idem = std::max(idem, std::abs(qrow[c] - q(r, c)));
        }
        CHECK(idem < 1e-10);
        // annihilation
        CHECK(std::sqrt(energy(matvec(q, p))) <= 1e-10 * std::sqrt(energy(p)));
    }
}

TEST_CASE("orthonormalize produces an orthonormal pilot-null basis") {
    SUBCASE("from p = [1, 1]: single row, +-[0.7071, -0.7071] up to phase") {
        const ProjectionBasis b = pilot_basis(ComplexVector{{1, 0}, {1, 0}});
        REQUIRE(b.q.rows == 1);
        const Complex ip =
            hermitian_dot(b.q.row(0), ComplexVector{{M_SQRT1_2, 0}, {-M_SQRT1_2, 0}});
        CHECK(std::abs(std::abs(ip) - 1.0) < 1e-12);
    }
    SUBCASE("from p = [1, 0]: row [0, 1] up to phase") {
        const ProjectionBasis b = pilot_basis(ComplexVector{{1, 0}, {0, 0}});
        REQUIRE(b.q.rows == 1);
        CHECK(std::abs(b.q(0, 0)) < 1e-12);
        CHECK(std::abs(std::abs(b.q(0, 1)) - 1.0) < 1e-12);
    }
    SUBCASE("random pilots: Q Q^H = I and Q p = 0") {
        Rng rng(0xbeefu);
        for (std::size_t len : {4u, 8u, 64u}) {
            const ComplexVector p = random_pilot(len, rng);
            const ProjectionBasis b = pilot_basis(p);
            REQUIRE(b.q.rows == len - 1);
            REQUIRE(b.q.cols == len);
            CHECK(max_abs_dev_from_identity(gram(b.q)) < 1e-10);
            CHECK(std::sqrt(energy(matvec(b.q, p))) <= 1e-10 * std::sqrt(energy(p)));
        }
    }
}

TEST_CASE("orthonormalize reports the achieved rank on deficient input") {
    SUBCASE("zero matrix") {
        const ComplexMatrix zeros(3, 3);
        try {
            orthonormalize(zeros);
            FAIL("expected RankError");
        } catch (const RankError& e) {
            CHECK(e.achieved_rank == 0);
        }
    }
    SUBCASE("rank-one projector of size 3") {
        ComplexMatrix m(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                m(r, c) = Complex{1.0 / 3.0, 0.0};
        try {
            orthonormalize(m);
            FAIL("expected RankError");
        } catch (const RankError& e) {
            CHECK(e.achieved_rank == 1);
        }
    }
}

TEST_CASE("projection is a partial isometry") {
    Rng rng(0x5eedu);
    const ComplexVector p = random_pilot(8, rng);
    const ProjectionBasis b = pilot_basis(p);
    for (int rep = 0; rep < 50; ++rep) {
        const ComplexVector x = random_pilot(8, rng);
        CHECK(energy(matvec(b.q, x)) <= energy(x) * (1.0 + 1e-12));
    }
}

TEST_CASE("projection preserves white-noise statistics") {
    // Gaussian z with per-sample variance sigma^2 stays white after Q:
    // cov(Q z) = sigma^2 I of size L-1.
    Rng rng(0xc0de1u);
    const std::size_t len = 4;
    const double sigma2 = 2.0;
    const ComplexVector p = random_pilot(len, rng);
    const ProjectionBasis b = pilot_basis(p);
    const int draws = 40000;
    ComplexMatrix cov(len - 1, len - 1);
    for (int n = 0; n < draws; ++n) {
        ComplexVector z(len);
        for (Complex& v : z)
            v = rng.complex_gaussian(sigma2);
        const ComplexVector y = matvec(b.q, z);
        for (std::size_t r = 0; r < len - 1; ++r)
            for (std::size_t c = 0; c < len - 1; ++c)
                cov(r, c) += y[r] * std::conj(y[c]);
    }
    double worst = 0.0;
    for (std::size_t r = 0; r < len - 1; ++r)
        for (std::size_t c = 0; c < len - 1; ++c) {
            const Complex want = (r == c) ? Complex{sigma2, 0.0} : Complex{};
            worst = std::max(worst, std::abs(cov(r, c) / static_cast<double>(draws) - want));
        }
    CHECK(worst / sigma2 < 0.05);
}
