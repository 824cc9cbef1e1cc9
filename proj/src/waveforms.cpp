#include "iqsim/waveforms.hpp"

#include "iqsim/errors.hpp"

#include <cmath>
#include <numeric>

namespace iqsim {

void FrameConfig::validate() const {
    if (pilot_len < 2)
        throw Error("FrameConfig: pilot_len must be >= 2");
    if (data_len < 1)
        throw Error("FrameConfig: data_len must be >= 1");
    if (zc_root < 1 || std::gcd(zc_root, pilot_len) != 1)
        throw InvalidRootError("FrameConfig: zc_root must be positive and coprime with pilot_len");
    if (frames_per_run < 1)
        throw Error("FrameConfig: frames_per_run must be >= 1");
}

ComplexVector zadoff_chu(int length, int root) {
    if (length < 1)
        throw Error("zadoff_chu: length must be >= 1");
    if (root < 1 || std::gcd(root, length) != 1)
        throw InvalidRootError("zadoff_chu: root " + std::to_string(root) +
                               " is not coprime with length " + std::to_string(length));
    ComplexVector p(static_cast<std::size_t>(length));
    const double u = static_cast<double>(root);
    const double n_len = static_cast<double>(length);
    for (int n = 0; n < length; ++n) {
        const double quad = (length % 2 == 0) ? static_cast<double>(n) * n
                                              : static_cast<double>(n) * (n + 1);
        p[static_cast<std::size_t>(n)] = std::polar(1.0, -M_PI * u * quad / n_len);
    }
    return p;
}

namespace {
constexpr double kQam64Scale = 0.15430334996209191; // 1/sqrt(42)
} // namespace

ComplexVector qam64_symbols(std::size_t count, Rng& rng) {
    ComplexVector out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double re = 2.0 * static_cast<double>(rng.uniform_int(8)) - 7.0;
        const double im = 2.0 * static_cast<double>(rng.uniform_int(8)) - 7.0;
        out[k] = Complex{re * kQam64Scale, im * kQam64Scale};
    }
    return out;
}

ComplexVector qam64_constellation() {
    ComplexVector pts;
    pts.reserve(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            pts.emplace_back((2.0 * a - 7.0) * kQam64Scale, (2.0 * b - 7.0) * kQam64Scale);
    return pts;
}

Frame build_frame(const FrameConfig& cfg, Rng& rng) {
    cfg.validate();
    Frame f;
    f.pilot = zadoff_chu(cfg.pilot_len, cfg.zc_root);
    f.data = qam64_symbols(static_cast<std::size_t>(cfg.data_len), rng);
    f.samples.reserve(f.pilot.size() + f.data.size());
    f.samples.insert(f.samples.end(), f.pilot.begin(), f.pilot.end());
    f.samples.insert(f.samples.end(), f.data.begin(), f.data.end());
    return f;
}

} // namespace iqsim
