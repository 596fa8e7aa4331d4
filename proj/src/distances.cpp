#include "planimetric/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "planimetric/errors.hpp"
#include "planimetric/geometry.hpp"

namespace planimetric {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

DistanceEstimate exact(double value, Method method) { return {value, method, 0.0, 0.0}; }

void require_interior(const Domain& domain, Complex z, const char* who) {
    if (!contains(domain, z))
        throw PointOutsideDomain(std::string(who) + ": point not in the open domain");
}

// Hyperbolic distance of the vertical strip 0 < Re u < 1 (tanh^-1 scale)
// between u1 = t1 + i v1 and u2 = t2 + i v2, through w = exp(i pi u) in the
// upper half-plane but evaluated without forming w, so large |v1 - v2| never
// underflows.
double strip_distance(double t1, double v1, double t2, double v2) {
    double x = kPi * std::abs(v1 - v2);
    double c = 4.0 * std::sin(kPi * t1) * std::sin(kPi * t2);
    if (x > 60.0) {
        // cosh x dominates both cos terms; relative error e^{-2x}.
        return 0.5 * (x + std::log(4.0 / c));
    }
    double a = 2.0 * (std::cosh(x) - std::cos(kPi * (t1 + t2)));
    double b = 2.0 * (std::cosh(x) - std::cos(kPi * (t1 - t2)));
    double s = std::sqrt(a) + std::sqrt(b);
    return 0.5 * std::log(s * s / c);
}

// Orbit minimum with a truncation certificate: the distance to deck
// translates is unimodal in the winding index, so interior minima are global.
template <typename DistanceAt>
DistanceEstimate orbit_minimum(DistanceAt&& distance_at, int k_max, const char* who) {
    if (k_max < 1) throw ConfigError("orbit bound must be positive");
    double best = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = -k_max; k <= k_max; ++k) {
        double d = distance_at(k);
        if (d < best) best = d, best_k = k;
    }
    if (std::abs(best_k) >= k_max)
        throw OrbitTruncationUnsafe(std::string(who) +
                                    ": orbit minimum attained at the truncation bound");
    return exact(best, Method::CoveringOrbit);
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "ClosedForm";
        case Method::Pullback: return "Pullback";
        case Method::GraphGeodesic: return "GraphGeodesic";
        case Method::CoveringOrbit: return "CoveringOrbit";
    }
    return "Unknown";
}

double half_plane_distance(Complex w1, Complex w2) {
    double y1 = w1.imag(), y2 = w2.imag();
    if (!(y1 > 0.0) || !(y2 > 0.0)) return std::numeric_limits<double>::infinity();
    double dx = w1.real() - w2.real();
    double a = std::sqrt(dx * dx + (y1 + y2) * (y1 + y2));
    double b = std::sqrt(dx * dx + (y1 - y2) * (y1 - y2));
    double s = a + b;
    return 0.5 * std::log(s * s / (4.0 * y1 * y2));
}

Curve disc_geodesic_curve(const disc::DiscPair& p, int n) {
    if (p.z == p.w) throw CoincidentPoints("disc_geodesic_curve: coincident endpoints");
    if (n < 2) throw ConfigError("disc_geodesic_curve: need at least 2 samples");

    Curve curve;
    curve.samples.resize(n);
    double cross = p.z.real() * p.w.imag() - p.z.imag() * p.w.real();
    double scale = std::abs(p.z) * std::abs(p.w);
    if (std::abs(cross) <= 1e-14 * std::max(scale, 1e-30)) {
        // z, w, 0 collinear: the geodesic is the diameter chord.
        for (int i = 0; i < n; ++i) {
            double t = static_cast<double>(i) / (n - 1);
            curve.samples[i] = p.z + t * (p.w - p.z);
        }
    } else {
        // Circle orthogonal to |z|=1: 2 Re(conj(c) z) = |z|^2 + 1 for both
        // endpoints; solve the 2x2 system for the centre c.
        double az = abs2(p.z) + 1.0, aw = abs2(p.w) + 1.0;
        double det = 2.0 * cross;
        double cx = (p.w.imag() * az - p.z.imag() * aw) / det;
        double cy = (p.z.real() * aw - p.w.real() * az) / det;
        Complex c{cx, cy};
        double angle_z = std::arg(p.z - c);
        double angle_w = std::arg(p.w - c);
        double delta = std::remainder(angle_w - angle_z, 2.0 * kPi);
        double radius = 0.5 * (std::abs(p.z - c) + std::abs(p.w - c));
        for (int i = 0; i < n; ++i) {
            double t = static_cast<double>(i) / (n - 1);
            curve.samples[i] = c + std::polar(radius, angle_z + t * delta);
        }
    }
    curve.samples.front() = p.z;
    curve.samples.back() = p.w;
    return curve;
}

double integrate_metric(const Curve& curve, const MetricField& metric) {
    if (curve.samples.size() < 2)
        throw ConfigError("integrate_metric: a curve needs at least 2 samples");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < curve.samples.size(); ++i) {
        Complex a = curve.samples[i], b = curve.samples[i + 1];
        double len = std::abs(b - a);
        if (len == 0.0) continue;
        total += metric(0.5 * (a + b)) * len;
    }
    return total;
}

DistanceEstimate bergman_distance(const Domain& domain, Complex z, Complex w, int resolution) {
    require_interior(domain, z, "bergman_distance");
    require_interior(domain, w, "bergman_distance");
    if (std::holds_alternative<UnitDisc>(domain))
        return exact(disc::bergman_disc({z, w}), Method::ClosedForm);
    if (const auto* s = std::get_if<ScaledDisc>(&domain))
        return exact(disc::bergman_disc({z / s->radius, w / s->radius}), Method::ClosedForm);
    if (std::holds_alternative<PuncturedDisc>(domain)) {
        // b is insensitive to the puncture: the kernel of D \ {0} is the disc
        // kernel, so the disc closed form applies verbatim.
        return exact(disc::bergman_disc({z, w}), Method::ClosedForm);
    }
    if (const auto* c = std::get_if<ConformalDomain>(&domain)) {
        Complex zz = c->map->inverse(z), zw = c->map->inverse(w);
        return exact(disc::bergman_disc({zz, zw}), Method::Pullback);
    }
    const auto& a = std::get<Annulus>(domain);
    MetricField metric = MetricField::annulus_series(a.inner_radius);
    return graph_geodesic(domain, metric, z, w, resolution);
}

DistanceEstimate bergman_distance(const Domain& domain, Complex z, Complex w) {
    return bergman_distance(domain, z, w, kDefaultGraphResolution);
}

DistanceEstimate kobayashi_distance(const Domain& domain, Complex z, Complex w, int k_max) {
    require_interior(domain, z, "kobayashi_distance");
    require_interior(domain, w, "kobayashi_distance");
    if (std::holds_alternative<UnitDisc>(domain))
        return exact(disc::kobayashi_disc({z, w}), Method::ClosedForm);
    if (const auto* s = std::get_if<ScaledDisc>(&domain))
        return exact(disc::kobayashi_disc({z / s->radius, w / s->radius}), Method::ClosedForm);
    if (const auto* c = std::get_if<ConformalDomain>(&domain)) {
        Complex zz = c->map->inverse(z), zw = c->map->inverse(w);
        return exact(disc::kobayashi_disc({zz, zw}), Method::Pullback);
    }
    if (std::holds_alternative<PuncturedDisc>(domain)) {
        // Universal cover Re s < 0 via z = e^s, mapped to the upper half
        // plane by w = -i s; deck translates shift Re by 2 pi k.
        Complex w1{std::arg(z), std::log(1.0 / std::abs(z))};
        Complex w2{std::arg(w), std::log(1.0 / std::abs(w))};
        return orbit_minimum(
            [&](int k) { return half_plane_distance(w1, w2 + Complex(2.0 * kPi * k, 0.0)); }, k_max,
            "kobayashi_distance(punctured disc)");
    }
    const auto& a = std::get<Annulus>(domain);
    // Universal cover log r < Re s < 0 via z = e^s, normalized to the unit
    // strip; deck translates shift the strip's imaginary part by 2 pi / L.
    double L = std::log(1.0 / a.inner_radius);
    double t1 = (std::log(std::abs(z)) + L) / L, v1 = std::arg(z) / L;
    double t2 = (std::log(std::abs(w)) + L) / L, v2 = std::arg(w) / L;
    return orbit_minimum(
        [&](int k) { return strip_distance(t1, v1, t2, v2 + 2.0 * kPi * k / L); }, k_max,
        "kobayashi_distance(annulus)");
}

DistanceEstimate kobayashi_distance(const Domain& domain, Complex z, Complex w) {
    return kobayashi_distance(domain, z, w, kDefaultOrbitBound);
}

DistanceEstimate caratheodory_distance(const Domain& domain, Complex z, Complex w) {
    if (std::holds_alternative<Annulus>(domain) || std::holds_alternative<PuncturedDisc>(domain))
        throw UnsupportedDomain(
            "caratheodory_distance: multiply connected domains are out of scope");
    require_interior(domain, z, "caratheodory_distance");
    require_interior(domain, w, "caratheodory_distance");
    // Simply connected: the Riemann map realizes the defining supremum, so
    // c_D = k_D and the pullback value is exact.
    DistanceEstimate k = kobayashi_distance(domain, z, w);
    k.method = Method::Pullback;
    return k;
}

} // namespace planimetric
