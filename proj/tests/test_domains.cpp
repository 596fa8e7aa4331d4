#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "planimetric/distances.hpp"
#include "planimetric/errors.hpp"
#include "planimetric/geometry.hpp"
#include "planimetric/kernel.hpp"
#include "planimetric/rng.hpp"

using namespace planimetric;

namespace {
const ConformalDomain& showcase() {
    static ConformalDomain dom({Complex(0.2, 0.0)});
    return dom;
}
} // namespace

TEST_CASE("evaluate_map by Horner") {
    auto [v0, d0] = showcase().map->evaluate(Complex(0, 0));
    CHECK(v0 == Complex(0, 0));
    CHECK(d0 == Complex(1, 0));
    auto [v1, d1] = showcase().map->evaluate(Complex(1, 0));
    CHECK(std::abs(v1 - Complex(1.2, 0)) < 1e-15);
    CHECK(std::abs(d1 - Complex(1.4, 0)) < 1e-15);
    auto [vi, di] = showcase().map->evaluate(Complex(0, 1));
    CHECK(std::abs(vi - Complex(-0.2, 1.0)) < 1e-15);
    CHECK(std::abs(di - Complex(1.0, 0.4)) < 1e-15);
}

TEST_CASE("inverse_map Newton") {
    // phi(0.5) = 0.55
    CHECK(std::abs(showcase().map->map(Complex(0.5, 0)) - Complex(0.55, 0)) < 1e-15);
    CHECK(std::abs(showcase().map->inverse(Complex(0.55, 0)) - Complex(0.5, 0)) < 1e-12);
    CHECK(std::abs(showcase().map->inverse(Complex(0, 0))) < 1e-14);
    // phi(1) = 1.2 lies on the boundary: rejected.
    CHECK_THROWS_AS((void)showcase().map->inverse(Complex(1.2, 0)), NoConvergence);
    CHECK_THROWS_AS((void)showcase().map->inverse(Complex(3.0, 0)), NoConvergence);
}

TEST_CASE("inverse_map round trip over 1e3 points") {
    Rng rng(5);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Complex zeta = rng.in_disc(0.95);
        Complex back = showcase().map->inverse(showcase().map->map(zeta));
        worst = std::max(worst, std::abs(back - zeta));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("pushforward Bergman density") {
    ConformalDomain identity{std::vector<Complex>{}};
    CHECK(pushforward_bergman_metric(identity, Complex(0, 0)) ==
          doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    CHECK(pushforward_bergman_metric(identity, Complex(0.5, 0)) ==
          doctest::Approx(std::numbers::sqrt2 / 0.75).epsilon(1e-12));
    // phi' (0.5) = 1.2, |zeta| = 0.5
    CHECK(pushforward_bergman_metric(showcase(), Complex(0.55, 0)) ==
          doctest::Approx(std::numbers::sqrt2 / (0.75 * 1.2)).epsilon(1e-10));
}

TEST_CASE("beta positivity at interior samples") {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        Complex z = showcase().map->map(rng.in_disc(0.97));
        CHECK(pushforward_bergman_metric(showcase(), z) > 0.0);
    }
}

TEST_CASE("pullback isometry of the Bergman distance") {
    Rng rng(6);
    const Domain dom = showcase();
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        Complex z1 = rng.in_disc(0.95), z2 = rng.in_disc(0.95);
        double through_domain =
            bergman_distance(dom, showcase().map->map(z1), showcase().map->map(z2)).value;
        double on_disc = disc::bergman_disc({z1, z2});
        worst = std::max(worst, std::abs(through_domain - on_disc));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("agreement of pushforward and kernel-route densities") {
    // Gram-route finite differences against the transported closed form.
    Rng rng(19);
    for (int i = 0; i < 8; ++i) {
        Complex zeta = rng.in_disc(0.75);
        Complex z = showcase().map->map(zeta);
        if (dist_to_boundary(showcase(), z) < 0.05) continue;
        double numeric = kernel::bergman_metric_numeric(showcase(), z, 60);
        double exact = pushforward_bergman_metric(showcase(), z);
        CHECK(numeric == doctest::Approx(exact).epsilon(1e-4));
    }
}

TEST_CASE("invalid conformal maps are rejected at construction") {
    // phi' = 1 + 1.2 zeta vanishes at |zeta| = 5/6 < 1.
    CHECK_THROWS_AS(ConformalDomain({Complex(0.6, 0.0)}), InvalidDomain);
    CHECK_THROWS_AS(ConformalDomain({Complex(std::nan(""), 0.0)}), InvalidDomain);
}

TEST_CASE("domain JSON schema round trip") {
    auto disc = domain_from_json(nlohmann::json::parse(R"({"type":"disc"})"));
    CHECK(std::holds_alternative<UnitDisc>(disc));
    auto ann = domain_from_json(nlohmann::json::parse(R"({"type":"annulus","r":0.25})"));
    CHECK(std::get<Annulus>(ann).inner_radius == 0.25);
    auto conf = domain_from_json(nlohmann::json::parse(R"({"type":"conformal","coeffs":[0.2]})"));
    CHECK(std::get<ConformalDomain>(conf).map->coefficients().size() == 1);
    auto punct = domain_from_json(nlohmann::json::parse(R"({"type":"punctured_disc"})"));
    CHECK(std::holds_alternative<PuncturedDisc>(punct));

    for (const Domain& d : {disc, ann, conf, punct})
        CHECK(domain_to_json(domain_from_json(domain_to_json(d))) == domain_to_json(d));

    CHECK_THROWS_AS((void)domain_from_json(nlohmann::json::parse(R"({"type":"square"})")),
                    ConfigError);
    CHECK_THROWS_AS((void)domain_from_json(nlohmann::json::parse(R"({"type":"disc","extra":1})")),
                    ConfigError);
    CHECK_THROWS_AS((void)domain_from_json(nlohmann::json::parse(R"({"type":"annulus","r":1.5})")),
                    ConfigError);
    CHECK_THROWS_AS(
        (void)domain_from_json(nlohmann::json::parse(R"({"type":"conformal","coeffs":[0.6]})")),
        ConfigError);
}

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("0.5") == Complex(0.5, 0));
    CHECK(parse_complex("-0.5-0.3i") == Complex(-0.5, -0.3));
    CHECK(parse_complex("0.3i") == Complex(0, 0.3));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("1e-3+2e-4i") == Complex(1e-3, 2e-4));
    CHECK_THROWS_AS((void)parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS((void)parse_complex("1+2"), ConfigError);
    for (Complex z : {Complex(0.5, -0.25), Complex(0, 1e-9), Complex(-3, 0)})
        CHECK(parse_complex(format_complex(z)) == z);
}
