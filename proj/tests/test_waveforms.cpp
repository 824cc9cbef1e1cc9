#include "iqsim/waveforms.hpp"

#include "iqsim/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace iqsim;

TEST_CASE("zadoff_chu even-length formula, frozen points") {
    const ComplexVector p = zadoff_chu(8, 1);
    CHECK(std::abs(p[0] - Complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(p[2] - Complex{0.0, -1.0}) < 1e-12); // exp(-j pi/2)
    CHECK(std::abs(p[4] - Complex{1.0, 0.0}) < 1e-12);  // exp(-j 2 pi)
    for (const Complex& v : p)
        CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
}

TEST_CASE("zadoff_chu has ideal periodic autocorrelation") {
    // brute-force sum over all lags
    auto check_autocorr = [](const ComplexVector& p) {
        const std::size_t n = p.size();
        for (std::size_t lag = 1; lag < n; ++lag) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += p[k] * std::conj(p[(k + lag) % n]);
            CHECK(std::abs(acc) < 1e-10);
        }
    };
    check_autocorr(zadoff_chu(8, 1));
    check_autocorr(zadoff_chu(8, 3));
    check_autocorr(zadoff_chu(63, 25)); // odd-length formula
}

TEST_CASE("zadoff_chu rejects non-coprime roots") {
    CHECK_THROWS_AS(zadoff_chu(8, 2), InvalidRootError);
    CHECK_THROWS_AS(zadoff_chu(63, 21), InvalidRootError);
}

TEST_CASE("qam64 constellation has unit average energy") {
    const ComplexVector pts = qam64_constellation();
    REQUIRE(pts.size() == 64);
    double sum = 0.0;
    for (const Complex& c : pts)
        sum += std::norm(c);
    CHECK(std::abs(sum / 64.0 - 1.0) < 1e-12);
}

TEST_CASE("qam64_symbols draws from the constellation") {
    Rng rng(42);
    const ComplexVector sym = qam64_symbols(1000, rng);
    const ComplexVector pts = qam64_constellation();
    for (const Complex& s : sym) {
        bool found = false;
        for (const Complex& c : pts)
            if (std::abs(s - c) < 1e-12) {
                found = true;
                break;
            }
        CHECK(found);
    }
    CHECK(qam64_symbols(0, rng).empty());
}

TEST_CASE("qam64_symbols empirical power approaches 1") {
    Rng rng(7);
    const ComplexVector sym = qam64_symbols(100000, rng);
    double sum = 0.0;
    for (const Complex& s : sym)
        sum += std::norm(s);
    CHECK(std::abs(sum / 1e5 - 1.0) < 0.02);
}

TEST_CASE("build_frame layout and determinism") {
    const FrameConfig cfg{8, 48, 1, 1};
    Rng rng_a(123), rng_b(123);
    const Frame fa = build_frame(cfg, rng_a);
    const Frame fb = build_frame(cfg, rng_b);
    CHECK(fa.samples.size() == 56);
    CHECK(fa.pilot.size() == 8);
    CHECK(fa.data.size() == 48);
    // same seed -> bit-identical frames
    for (std::size_t k = 0; k < fa.samples.size(); ++k)
        CHECK(fa.samples[k] == fb.samples[k]);
    // pilot identical across consecutive frames of a run
    const Frame fc = build_frame(cfg, rng_a);
    for (std::size_t k = 0; k < fa.pilot.size(); ++k)
        CHECK(fa.pilot[k] == fc.pilot[k]);
    // pilot power exactly 1 per sample
    double pwr = 0.0;
    for (const Complex& v : fa.pilot)
        pwr += std::norm(v);
    CHECK(std::abs(pwr / 8.0 - 1.0) < 1e-12);
}

TEST_CASE("FrameConfig validation") {
    CHECK_THROWS_AS((FrameConfig{8, 48, 2, 1}.validate()), InvalidRootError);
    CHECK_THROWS_AS((FrameConfig{1, 48, 1, 1}.validate()), Error);
    CHECK_NOTHROW((FrameConfig{8, 48, 3, 1}.validate()));
}
