#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planimetric/complex_utils.hpp"

namespace planimetric {

// The unit disc |z| < 1.
struct UnitDisc {};

// Disc of radius `radius` centred at 0. Not part of the CLI domain schema;
// exists so inclusion checks and quadrature scaling have a second circular
// domain to compare against.
struct ScaledDisc {
    double radius = 1.0;
};

// A(r, 1) = { r < |z| < 1 }.
struct Annulus {
    double inner_radius = 0.5;
};

// The unit disc minus the origin.
struct PuncturedDisc {};

// Polynomial Riemann map phi(zeta) = zeta + sum_k a_k zeta^{k+1} restricted
// to the closed unit disc. Construction samples |phi'| on a polar grid and
// the boundary image for self-intersection; a map that fails either check is
// rejected so every instance is a valid injective model.
class ConformalMap {
public:
    explicit ConformalMap(std::vector<Complex> coefficients);

    // phi(zeta) and phi'(zeta) by Horner evaluation.
    std::pair<Complex, Complex> evaluate(Complex zeta) const;
    Complex map(Complex zeta) const { return evaluate(zeta).first; }
    Complex derivative(Complex zeta) const { return evaluate(zeta).second; }

    // Newton iteration seeded at z with step damping; throws NoConvergence
    // when the residual is still above 1e-12 after 50 iterations or the
    // solution lands on/outside the unit circle.
    Complex inverse(Complex z) const;

    const std::vector<Complex>& coefficients() const { return coeffs_; }
    double injectivity_margin() const { return injectivity_margin_; }
    int polynomial_degree() const { return static_cast<int>(coeffs_.size()) + 1; }

private:
    std::vector<Complex> coeffs_;
    double injectivity_margin_ = 0.0;
};

struct ConformalDomain {
    std::shared_ptr<const ConformalMap> map;

    explicit ConformalDomain(std::vector<Complex> coefficients)
        : map(std::make_shared<const ConformalMap>(std::move(coefficients))) {}
};

using Domain = std::variant<UnitDisc, ScaledDisc, Annulus, PuncturedDisc, ConformalDomain>;

// CLI schema: {"type":"disc"} | {"type":"annulus","r":...} |
// {"type":"conformal","coeffs":[...]} | {"type":"punctured_disc"}.
// Unknown fields are rejected. ScaledDisc is intentionally not expressible.
Domain domain_from_json(const nlohmann::json& spec);
nlohmann::json domain_to_json(const Domain& domain);

// Compact single-token label used in CSV rows, e.g. "annulus(r=0.25)".
std::string domain_label(const Domain& domain);

// Bergman density beta_D(z;1) transported from the disc through the map:
// sqrt(2) / ((1-|zeta|^2) |phi'(zeta)|) with zeta = inverse(z).
double pushforward_bergman_metric(const ConformalDomain& domain, Complex z);

} // namespace planimetric
