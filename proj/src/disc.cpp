#include "planimetric/disc.hpp"

#include <cmath>
#include <numbers>

#include "planimetric/errors.hpp"

namespace planimetric::disc {

namespace {

// 1 - |.|^2 as a product, stable near the boundary.
double one_minus_sq(Complex z) {
    double m = std::abs(z);
    return (1.0 - m) * (1.0 + m);
}

} // namespace

DiscPair::DiscPair(Complex z_, Complex w_) : z(z_), w(w_) {
    if (!is_finite(z) || !is_finite(w)) throw InvalidDomain("DiscPair: non-finite point");
    if (!(std::abs(z) < 1.0 && std::abs(w) < 1.0))
        throw InvalidDomain("DiscPair: points must lie in the open unit disc");
}

double pseudo_hyperbolic(const DiscPair& p) {
    if (p.z == p.w) return 0.0;
    return std::abs(p.z - p.w) / std::abs(1.0 - std::conj(p.z) * p.w);
}

double kobayashi_disc(const DiscPair& p) {
    double m = pseudo_hyperbolic(p);
    if (m == 0.0) return 0.0;
    if (m <= 0.99) return 0.5 * std::log((1.0 + m) / (1.0 - m));
    // Near m = 1 the direct 1-m cancels; rewrite it through
    // |1-conj(z)w|^2 = (1-|z|^2)(1-|w|^2) + |z-w|^2.
    double a = std::abs(1.0 - std::conj(p.z) * p.w);
    double s = std::abs(p.z - p.w);
    double one_minus_m = one_minus_sq(p.z) * one_minus_sq(p.w) / (a * (a + s));
    return 0.5 * std::log((1.0 + m) / one_minus_m);
}

double bergman_disc(const DiscPair& p) { return std::numbers::sqrt2 * kobayashi_disc(p); }

BoundPair lemma4a_bounds(const DiscPair& p) {
    double q = std::abs(p.z - p.w) / std::sqrt(one_minus_sq(p.z) * one_minus_sq(p.w));
    return {std::log1p(q), std::log1p(2.0 * q)};
}

BoundPair lemma4b_bounds(const DiscPair& p) {
    double dz = 1.0 - std::abs(p.z);
    double dw = 1.0 - std::abs(p.w);
    double q = std::abs(p.z - p.w) / std::sqrt(dz * dw);
    return {std::log1p(0.5 * q), std::log1p(std::numbers::sqrt2 * q)};
}

double sharpness_ratio_a(const DiscPair& p) {
    if (p.z == p.w) throw CoincidentPoints("sharpness_ratio_a: coincident points");
    // expm1(b/sqrt2) with b/sqrt2 = atanh(m): exp(atanh m) - 1 stays accurate
    // for small separations through expm1.
    double r = std::expm1(kobayashi_disc(p));
    return r * std::sqrt(one_minus_sq(p.z) * one_minus_sq(p.w)) / std::abs(p.z - p.w);
}

ProximityCase prop1prime_classify(double dist, double dz, double dw) {
    if (!(dist > 0.0 && dz > 0.0 && dw > 0.0))
        throw ConfigError("prop1prime_classify: inputs must be positive");
    return dist * dist > dz * dw ? ProximityCase::Far : ProximityCase::Near;
}

} // namespace planimetric::disc
