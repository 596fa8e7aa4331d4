#pragma once

#include <cstdint>
#include <random>

#include "planimetric/complex_utils.hpp"

namespace planimetric {

// Deterministic uniform generator. Distributions are derived from raw
// mt19937_64 output by fixed arithmetic, so streams are reproducible across
// standard libraries (std::uniform_real_distribution is not pinned).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform w.r.t. area on |z| < rmax, by rejection.
    Complex in_disc(double rmax = 1.0) {
        for (;;) {
            double x = uniform(-1.0, 1.0);
            double y = uniform(-1.0, 1.0);
            if (x * x + y * y < 1.0) return {rmax * x, rmax * y};
        }
    }

    // Uniform w.r.t. area on r < |z| < R.
    Complex in_annulus(double r, double R) {
        double rho = std::sqrt(uniform(r * r, R * R));
        double theta = uniform(0.0, 2.0 * 3.14159265358979323846);
        return {rho * std::cos(theta), rho * std::sin(theta)};
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace planimetric
