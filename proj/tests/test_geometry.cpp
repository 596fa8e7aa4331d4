#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "planimetric/errors.hpp"
#include "planimetric/geometry.hpp"
#include "planimetric/rng.hpp"

using namespace planimetric;

namespace {

const ConformalDomain& showcase() {
    static ConformalDomain dom({Complex(0.2, 0.0)});
    return dom;
}

// Independent boundary-distance oracle: dense angular scan of |phi(e^it)-z|
// followed by ternary refinement of the best bracket.
double scan_distance(const ConformalDomain& dom, Complex z) {
    const int n = 1 << 15;
    double best = 1e300;
    int at = 0;
    for (int i = 0; i < n; ++i) {
        double d = std::abs(dom.map->map(std::polar(1.0, 2 * std::numbers::pi * i / n)) - z);
        if (d < best) best = d, at = i;
    }
    double lo = 2 * std::numbers::pi * (at - 1) / n, hi = 2 * std::numbers::pi * (at + 1) / n;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        double f1 = std::abs(dom.map->map(std::polar(1.0, m1)) - z);
        double f2 = std::abs(dom.map->map(std::polar(1.0, m2)) - z);
        if (f1 < f2)
            hi = m2;
        else
            lo = m1;
    }
    return std::min(best, std::abs(dom.map->map(std::polar(1.0, 0.5 * (lo + hi))) - z));
}

double segment_distance(Complex p, Complex a, Complex b) {
    Complex ab = b - a;
    double len2 = abs2(ab);
    double t = len2 == 0.0 ? 0.0
                           : std::clamp(((p.real() - a.real()) * ab.real() +
                                         (p.imag() - a.imag()) * ab.imag()) /
                                            len2,
                                        0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double polyline_distance(const BoundaryPolyline& poly, Complex z) {
    double best = 1e300;
    for (const auto& loop : poly.loops) {
        const auto& v = loop.vertices;
        for (std::size_t i = 0; i < v.size(); ++i)
            best = std::min(best, segment_distance(z, v[i], v[(i + 1) % v.size()]));
    }
    return best;
}

double loop_area(const std::vector<Complex>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Complex a = v[i], b = v[(i + 1) % v.size()];
        s += a.real() * b.imag() - a.imag() * b.real();
    }
    return 0.5 * s;
}

} // namespace

TEST_CASE("dist_to_boundary closed forms") {
    CHECK(dist_to_boundary(UnitDisc{}, Complex(0.3, 0.0)) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(dist_to_boundary(Annulus{0.25}, Complex(0.5, 0.0)) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(dist_to_boundary(Annulus{0.25}, Complex(0.9, 0.0)) ==
          doctest::Approx(0.1).epsilon(1e-13));
    CHECK(dist_to_boundary(PuncturedDisc{}, Complex(0.1, 0.0)) ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK(dist_to_boundary(ScaledDisc{0.8}, Complex(0.3, 0.0)) ==
          doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dist_to_boundary on the showcase conformal domain") {
    // min over theta of |phi(e^{i theta})| = sqrt(1.04 + 0.4 cos theta), so
    // the distance from 0 is sqrt(0.64) = 0.8, attained at theta = pi.
    double oracle = scan_distance(showcase(), Complex(0.0, 0.0));
    CHECK(oracle == doctest::Approx(0.8).epsilon(1e-10));
    double got = dist_to_boundary(showcase(), Complex(0.0, 0.0));
    CHECK(got == doctest::Approx(oracle).epsilon(1e-6));

    Rng rng(42);
    for (int i = 0; i < 25; ++i) {
        Complex z = showcase().map->map(rng.in_disc(0.9));
        double want = scan_distance(showcase(), z);
        double have = dist_to_boundary(showcase(), z);
        CHECK(have == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("dist_to_boundary error contract") {
    CHECK_THROWS_AS((void)dist_to_boundary(UnitDisc{}, Complex(1.5, 0.0)), PointOutsideDomain);
    CHECK_THROWS_AS((void)dist_to_boundary(Annulus{0.5}, Complex(0.25, 0.0)), PointOutsideDomain);
    CHECK_THROWS_AS((void)dist_to_boundary(UnitDisc{}, Complex(1.0 - 5e-15, 0.0)),
                    DegenerateQuery);
}

TEST_CASE("contains") {
    CHECK(contains(UnitDisc{}, Complex(0.5, 0.0)));
    CHECK_FALSE(contains(UnitDisc{}, Complex(1.0, 0.0))); // boundary reports false
    CHECK_FALSE(contains(Annulus{0.5}, Complex(0.25, 0.0)));
    CHECK(contains(Annulus{0.5}, Complex(0.0, 0.75)));
    CHECK_FALSE(contains(PuncturedDisc{}, Complex(0.0, 0.0)));
    CHECK(contains(showcase(), Complex(0.0, 0.0)));
    CHECK(contains(showcase(), Complex(1.1, 0.0)));       // inside: phi(1) = 1.2
    CHECK_FALSE(contains(showcase(), Complex(1.2, 0.0))); // boundary point
    CHECK_FALSE(contains(showcase(), Complex(2.0, 0.0)));
    CHECK_FALSE(contains(UnitDisc{}, Complex(std::nan(""), 0.0)));
}

TEST_CASE("boundary_polyline shapes and orientations") {
    CHECK_THROWS_AS((void)boundary_polyline(UnitDisc{}, 4), TooCoarse);

    auto disc8 = boundary_polyline(UnitDisc{}, 8);
    REQUIRE(disc8.component_count() == 1);
    REQUIRE(disc8.loops[0].vertices.size() == 8);
    for (int k = 0; k < 8; ++k) {
        Complex want = std::polar(1.0, 2 * std::numbers::pi * k / 8);
        CHECK(std::abs(disc8.loops[0].vertices[k] - want) < 1e-15);
    }

    auto ann = boundary_polyline(Annulus{0.5}, 16);
    REQUIRE(ann.component_count() == 2);
    REQUIRE(ann.loops[0].vertices.size() == 16);
    REQUIRE(ann.loops[1].vertices.size() == 16);
    for (auto& v : ann.loops[0].vertices) CHECK(std::abs(std::abs(v) - 1.0) < 1e-15);
    for (auto& v : ann.loops[1].vertices) CHECK(std::abs(std::abs(v) - 0.5) < 1e-15);
    CHECK(loop_area(ann.loops[0].vertices) > 0.0);
    CHECK(loop_area(ann.loops[1].vertices) < 0.0);

    auto conf = boundary_polyline(showcase(), 64);
    REQUIRE(conf.component_count() == 1);
    for (int k = 0; k < 64; ++k) {
        Complex want = showcase().map->map(std::polar(1.0, 2 * std::numbers::pi * k / 64));
        CHECK(std::abs(conf.loops[0].vertices[k] - want) < 1e-14);
    }
    CHECK(loop_area(conf.loops[0].vertices) > 0.0);

    // The puncture has no polyline representation.
    auto punct = boundary_polyline(PuncturedDisc{}, 32);
    CHECK(punct.component_count() == 1);
}

TEST_CASE("1-Lipschitz property of the boundary distance") {
    Rng rng(7);
    const Domain dom = showcase();
    for (int i = 0; i < 2000; ++i) {
        Complex z = showcase().map->map(rng.in_disc(0.95));
        Complex w = showcase().map->map(rng.in_disc(0.95));
        double dz = dist_to_boundary(dom, z);
        double dw = dist_to_boundary(dom, w);
        CHECK(std::abs(dz - dw) <= std::abs(z - w) + 2e-6);
    }
}

TEST_CASE("disc exactness over 1e4 random points") {
    Rng rng(12);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Complex z = rng.in_disc(0.999);
        worst = std::max(worst, std::abs(dist_to_boundary(UnitDisc{}, z) - (1.0 - std::abs(z))));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("refinement consistency of the sampled boundary") {
    auto p1 = boundary_polyline(showcase(), 8192);
    auto p2 = boundary_polyline(showcase(), 16384);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Complex z = showcase().map->map(rng.in_disc(0.9));
        double d1 = polyline_distance(p1, z);
        double d2 = polyline_distance(p2, z);
        CHECK(std::abs(d1 - d2) <= p1.target_relative_accuracy + 1e-12);
        // And the library value refines the chordal one.
        CHECK(std::abs(dist_to_boundary(showcase(), z) - d1) <=
              p1.target_relative_accuracy + 1e-12);
    }
}
