#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "planimetric/disc.hpp"
#include "planimetric/errors.hpp"
#include "planimetric/rng.hpp"

using namespace planimetric;
using namespace planimetric::disc;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Complex random_automorphism_image(Complex a, double phase, Complex z) {
    // g(z) = e^{i phase} (z - a)/(1 - conj(a) z)
    return std::polar(1.0, phase) * (z - a) / (1.0 - std::conj(a) * z);
}

} // namespace

TEST_CASE("pseudo-hyperbolic distance") {
    CHECK(pseudo_hyperbolic({Complex(0, 0), Complex(0.5, 0)}) == doctest::Approx(0.5).epsilon(1e-15));
    // |z-w| = 1, |1 - conj(z)w| = 1.25
    CHECK(pseudo_hyperbolic({Complex(0.5, 0), Complex(-0.5, 0)}) ==
          doctest::Approx(0.8).epsilon(1e-15));
    CHECK(pseudo_hyperbolic({Complex(0.3, 0.4), Complex(0.3, 0.4)}) == 0.0);
}

TEST_CASE("disc Kobayashi distance") {
    // atanh(1/2) = log(3)/2 and atanh(4/5) = log(3)
    CHECK(kobayashi_disc({Complex(0, 0), Complex(0.5, 0)}) ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
    CHECK(kobayashi_disc({Complex(0.5, 0), Complex(-0.5, 0)}) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(kobayashi_disc({Complex(0.2, -0.7), Complex(0.2, -0.7)}) == 0.0);
}

TEST_CASE("near-boundary cancellation guard") {
    // For the pair (-t, t) hyperbolic additivity gives exactly 2 atanh(t).
    for (double t : {0.995, 0.9999, 0.9999999}) {
        DiscPair p{Complex(-t, 0), Complex(t, 0)};
        CHECK(kobayashi_disc(p) == doctest::Approx(2.0 * std::atanh(t)).epsilon(1e-12));
    }
}

TEST_CASE("disc Bergman distance is sqrt2 times Kobayashi") {
    DiscPair p{Complex(0, 0), Complex(0.5, 0)};
    CHECK(bergman_disc(p) == doctest::Approx(kSqrt2 * 0.5 * std::log(3.0)).epsilon(1e-15));
    CHECK(bergman_disc({Complex(0.1, 0.1), Complex(0.1, 0.1)}) == 0.0);
    // rotation invariance
    CHECK(bergman_disc({Complex(0, 0), Complex(0, 0.5)}) ==
          doctest::Approx(bergman_disc(p)).epsilon(1e-15));
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        DiscPair q{rng.in_disc(0.999), rng.in_disc(0.999)};
        if (q.z == q.w) continue;
        CHECK(bergman_disc(q) / kobayashi_disc(q) == doctest::Approx(kSqrt2).epsilon(1e-14));
    }
}

TEST_CASE("identity |1-conj(z)w|^2 = (1-|z|^2)(1-|w|^2) + |z-w|^2") {
    Rng rng(2);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        Complex z = rng.in_disc(), w = rng.in_disc();
        double lhs = abs2(1.0 - std::conj(z) * w);
        double rhs = (1.0 - abs2(z)) * (1.0 - abs2(w)) + abs2(z - w);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("Moebius invariance of the disc distances") {
    Rng rng(3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Complex z = rng.in_disc(0.98), w = rng.in_disc(0.98);
        Complex a = rng.in_disc(0.9);
        double phase = rng.uniform(0.0, 2 * std::numbers::pi);
        Complex gz = random_automorphism_image(a, phase, z);
        Complex gw = random_automorphism_image(a, phase, w);
        worst = std::max(worst,
                         std::abs(bergman_disc({gz, gw}) - bergman_disc({z, w})));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("two-sided bound formulas at pinned pairs") {
    { // (0, 0.5)
        DiscPair p{Complex(0, 0), Complex(0.5, 0)};
        double k = kobayashi_disc(p); // = b/sqrt2
        auto a = lemma4a_bounds(p);
        CHECK(a.lower == doctest::Approx(std::log1p(0.5 / std::sqrt(0.75))).epsilon(1e-15));
        CHECK(a.upper == doctest::Approx(std::log1p(1.0 / std::sqrt(0.75))).epsilon(1e-15));
        CHECK(a.lower <= k);
        CHECK(k <= a.upper);
        auto b = lemma4b_bounds(p);
        CHECK(b.lower == doctest::Approx(std::log1p(0.25 / std::sqrt(0.5))).epsilon(1e-15));
        CHECK(b.upper == doctest::Approx(std::log(2.0)).epsilon(1e-15)); // sqrt2*0.5/sqrt(0.5) = 1
        CHECK(b.lower <= k);
        CHECK(k <= b.upper);
    }
    { // (0.9, -0.9): b/sqrt2 = atanh(180/181) = log(19)
        DiscPair p{Complex(0.9, 0), Complex(-0.9, 0)};
        double k = kobayashi_disc(p);
        CHECK(k == doctest::Approx(std::log(19.0)).epsilon(1e-14));
        auto a = lemma4a_bounds(p);
        CHECK(a.lower == doctest::Approx(std::log1p(1.8 / 0.19)).epsilon(1e-14));
        CHECK(a.upper == doctest::Approx(std::log1p(3.6 / 0.19)).epsilon(1e-14));
        CHECK(a.lower <= k);
        CHECK(k <= a.upper);
        auto b = lemma4b_bounds(p);
        CHECK(b.lower == doctest::Approx(std::log(10.0)).epsilon(1e-14));
        CHECK(b.upper == doctest::Approx(std::log1p(18.0 * kSqrt2)).epsilon(1e-14));
        CHECK(b.lower <= k);
        CHECK(k <= b.upper);
    }
    { // coincident pair: all bounds collapse to zero
        DiscPair p{Complex(0.3, 0.2), Complex(0.3, 0.2)};
        auto a = lemma4a_bounds(p);
        auto b = lemma4b_bounds(p);
        CHECK(a.lower == 0.0);
        CHECK(a.upper == 0.0);
        CHECK(b.lower == 0.0);
        CHECK(b.upper == 0.0);
    }
}

TEST_CASE("enclosures hold over 1e5 random pairs") {
    Rng rng(4);
    int violations = 0;
    for (int i = 0; i < 100000; ++i) {
        DiscPair p{rng.in_disc(), rng.in_disc()};
        double k = kobayashi_disc(p);
        double slack = 1e-12 * (1.0 + k);
        auto a = lemma4a_bounds(p);
        auto b = lemma4b_bounds(p);
        if (a.lower > k + slack || k > a.upper + slack) ++violations;
        if (b.lower > k + slack || k > b.upper + slack) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("sharpness functional of the (a) bounds") {
    // Series expansion near coincidence: R = 1 + eps/2 + O(eps^2).
    double r_small = sharpness_ratio_a({Complex(0, 0), Complex(0.001, 0)});
    CHECK(r_small == doctest::Approx(1.0005).epsilon(1e-4));
    // On (-t, t) the functional is exactly 1 + t.
    CHECK(sharpness_ratio_a({Complex(-0.999, 0), Complex(0.999, 0)}) ==
          doctest::Approx(1.999).epsilon(1e-12));
    double r_mid = sharpness_ratio_a({Complex(0, 0), Complex(0.5, 0)});
    CHECK(r_mid >= 1.0);
    CHECK(r_mid <= 2.0);
    CHECK_THROWS_AS((void)sharpness_ratio_a({Complex(0.1, 0), Complex(0.1, 0)}),
                    CoincidentPoints);

    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
        DiscPair p{rng.in_disc(0.9999), rng.in_disc(0.9999)};
        if (p.z == p.w) continue;
        double r = sharpness_ratio_a(p);
        CHECK(r >= 1.0 - 1e-12);
        CHECK(r <= 2.0 + 1e-12);
    }
    // R -> 1 as s -> 0 and R -> 2 as s -> infinity along the (-t, t) family.
    double prev = 2.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        double r = sharpness_ratio_a({Complex(0, 0), Complex(eps, 0)});
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev - 1.0 < 1e-4 + 1e-8);
    prev = 1.0;
    for (double t : {0.9, 0.99, 0.999, 0.9999}) {
        double r = sharpness_ratio_a({Complex(-t, 0), Complex(t, 0)});
        CHECK(r > prev);
        CHECK(r == doctest::Approx(1.0 + t).epsilon(1e-12));
        prev = r;
    }
}

TEST_CASE("far/near classification") {
    CHECK(prop1prime_classify(0.5, 0.1, 0.1) == ProximityCase::Far);
    CHECK(prop1prime_classify(0.01, 0.5, 0.5) == ProximityCase::Near);
    // Equality goes to Near.
    CHECK(prop1prime_classify(0.1, 0.1, 0.1) == ProximityCase::Near);
    CHECK_THROWS_AS((void)prop1prime_classify(-1.0, 0.1, 0.1), ConfigError);
}

TEST_CASE("DiscPair validation") {
    CHECK_THROWS_AS(DiscPair(Complex(1.0, 0), Complex(0, 0)), InvalidDomain);
    CHECK_THROWS_AS(DiscPair(Complex(0, 0), Complex(0, 1.5)), InvalidDomain);
    CHECK_THROWS_AS(DiscPair(Complex(std::nan(""), 0), Complex(0, 0)), InvalidDomain);
}
