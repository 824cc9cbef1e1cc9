#pragma once

#include "iqsim/numerics.hpp"
#include "iqsim/rng.hpp"

namespace iqsim {

/// Pilot + data frame layout. Pilot is a Zadoff-Chu sequence of length
/// pilot_len with root zc_root; data is unit-power 64-QAM.
struct FrameConfig {
    int pilot_len = 8;
    int data_len = 48;
    int zc_root = 1;
    int frames_per_run = 1;

    int frame_len() const { return pilot_len + data_len; }
    void validate() const;
};

struct Frame {
    ComplexVector pilot;
    ComplexVector data;
    ComplexVector samples; // [pilot | data]
};

/// Zadoff-Chu sequence: exp(-j pi u n^2 / N) for even N,
/// exp(-j pi u n(n+1) / N) for odd N. Requires gcd(u, N) = 1.
ComplexVector zadoff_chu(int length, int root);

/// i.i.d. draws from the square 64-QAM constellation {+-1,..,+-7}^2 / sqrt(42)
/// (unit average symbol energy).
ComplexVector qam64_symbols(std::size_t count, Rng& rng);

/// All 64 constellation points, for enumeration in tests and demappers.
ComplexVector qam64_constellation();

/// One frame: deterministic pilot, fresh random data.
Frame build_frame(const FrameConfig& cfg, Rng& rng);

} // namespace iqsim
