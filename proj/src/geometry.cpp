#include "planimetric/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "planimetric/errors.hpp"

namespace planimetric {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryEps = 1e-14;
constexpr int kConformalBoundarySamples = 8192;

// Cached dense boundary sampling per conformal map instance.
const std::vector<Complex>& conformal_boundary_samples(const ConformalDomain& dom) {
    static std::mutex mutex;
    static std::map<const ConformalMap*, std::vector<Complex>> cache;
    std::scoped_lock lock(mutex);
    auto [it, inserted] = cache.try_emplace(dom.map.get());
    if (inserted) {
        it->second.resize(kConformalBoundarySamples);
        for (int i = 0; i < kConformalBoundarySamples; ++i)
            it->second[i] = dom.map->map(std::polar(1.0, 2.0 * kPi * i / kConformalBoundarySamples));
    }
    return it->second;
}

// Golden-section minimization of theta -> |phi(e^{i theta}) - z| on [lo, hi].
double refine_boundary_distance(const ConformalMap& map, Complex z, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    auto f = [&](double theta) { return std::abs(map.map(std::polar(1.0, theta)) - z); };
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 60 && (b - a) > 1e-13; ++i) {
        if (f1 < f2) {
            b = x2, x2 = x1, f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1, x1 = x2, f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

double conformal_dist(const ConformalDomain& dom, Complex z) {
    const auto& bd = conformal_boundary_samples(dom);
    const int n = static_cast<int>(bd.size());
    std::vector<double> vd(n);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        vd[i] = std::abs(z - bd[i]);
        best = std::min(best, vd[i]);
    }
    // Polish every near-optimal local minimum against the true curve; the
    // window of one sample step each way brackets the continuous minimizer.
    double step = 2.0 * kPi / n;
    double refined = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (vd[i] > best + 4.0 * step) continue;
        if (vd[(i + n - 1) % n] < vd[i] || vd[(i + 1) % n] < vd[i]) continue;
        refined = std::min(refined,
                           refine_boundary_distance(*dom.map, z, i * step - step, i * step + step));
    }
    return refined;
}

} // namespace

bool contains(const Domain& domain, Complex z) {
    if (!is_finite(z)) return false;
    if (std::holds_alternative<UnitDisc>(domain)) return std::abs(z) < 1.0;
    if (const auto* s = std::get_if<ScaledDisc>(&domain)) return std::abs(z) < s->radius;
    if (const auto* a = std::get_if<Annulus>(&domain)) {
        double m = std::abs(z);
        return m > a->inner_radius && m < 1.0;
    }
    if (std::holds_alternative<PuncturedDisc>(domain)) {
        double m = std::abs(z);
        return m > 0.0 && m < 1.0;
    }
    const auto& c = std::get<ConformalDomain>(domain);
    try {
        c.map->inverse(z);
        return true;
    } catch (const NoConvergence&) {
        return false;
    }
}

double dist_to_boundary(const Domain& domain, Complex z) {
    if (!contains(domain, z)) throw PointOutsideDomain("dist_to_boundary: point not in the open domain");
    double d;
    if (std::holds_alternative<UnitDisc>(domain)) {
        d = 1.0 - std::abs(z);
    } else if (const auto* s = std::get_if<ScaledDisc>(&domain)) {
        d = s->radius - std::abs(z);
    } else if (const auto* a = std::get_if<Annulus>(&domain)) {
        d = std::min(std::abs(z) - a->inner_radius, 1.0 - std::abs(z));
    } else if (std::holds_alternative<PuncturedDisc>(domain)) {
        d = std::min(std::abs(z), 1.0 - std::abs(z));
    } else {
        d = conformal_dist(std::get<ConformalDomain>(domain), z);
    }
    if (d < kBoundaryEps)
        throw DegenerateQuery("dist_to_boundary: point within 1e-14 of the boundary");
    return d;
}

BoundaryPolyline boundary_polyline(const Domain& domain, int n) {
    if (n < 8) throw TooCoarse("boundary_polyline: need at least 8 points per component");

    auto circle = [n](double radius, bool counterclockwise) {
        BoundaryPolyline::Loop loop;
        loop.vertices.resize(n);
        for (int i = 0; i < n; ++i) {
            double theta = 2.0 * kPi * i / n;
            if (!counterclockwise) theta = -theta;
            loop.vertices[i] = std::polar(radius, theta);
        }
        return loop;
    };

    BoundaryPolyline poly;
    double sag; // max chord deviation from the true curve
    if (std::holds_alternative<UnitDisc>(domain) || std::holds_alternative<PuncturedDisc>(domain)) {
        poly.loops.push_back(circle(1.0, true));
        sag = kPi * kPi / (2.0 * n * n);
    } else if (const auto* s = std::get_if<ScaledDisc>(&domain)) {
        poly.loops.push_back(circle(s->radius, true));
        sag = s->radius * kPi * kPi / (2.0 * n * n);
    } else if (const auto* a = std::get_if<Annulus>(&domain)) {
        poly.loops.push_back(circle(1.0, true));
        poly.loops.push_back(circle(a->inner_radius, false));
        sag = kPi * kPi / (2.0 * n * n);
    } else {
        const auto& c = std::get<ConformalDomain>(domain);
        BoundaryPolyline::Loop loop;
        loop.vertices.resize(n);
        double curvature_scale = 1.0;
        int k = 1;
        for (Complex coeff : c.map->coefficients()) {
            curvature_scale += (k + 1) * (k + 1) * std::abs(coeff);
            ++k;
        }
        for (int i = 0; i < n; ++i)
            loop.vertices[i] = c.map->map(std::polar(1.0, 2.0 * kPi * i / n));
        poly.loops.push_back(std::move(loop));
        sag = curvature_scale * kPi * kPi / (2.0 * n * n);
    }
    poly.target_relative_accuracy = std::max(sag, 1e-6);
    return poly;
}

} // namespace planimetric
