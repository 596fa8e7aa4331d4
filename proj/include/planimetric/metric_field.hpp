#pragma once

#include <functional>
#include <memory>
#include <string>

#include "planimetric/domains.hpp"

namespace planimetric {

// Evaluator z -> beta(z;1) for a conformal Riemannian density on a domain,
// together with its declared accuracy model and conditioning floor. Fields
// are immutable and safe to share across threads.
class MetricField {
public:
    using Evaluator = std::function<double(Complex)>;

    MetricField(Domain domain, Evaluator evaluator, double conditioning_floor,
                std::string accuracy_tag);

    // Throws MetricEvaluationFailed for points below the conditioning floor
    // or outside the domain; wraps evaluator failures in the same type.
    double operator()(Complex z) const;

    const Domain& domain() const { return domain_; }
    double conditioning_floor() const { return floor_; }
    const std::string& accuracy_tag() const { return tag_; }

    // Closed form sqrt(2)/(1-|z|^2) on the unit disc (also valid for the
    // punctured disc, whose kernel is the disc kernel).
    static MetricField exact_disc();
    // sqrt(2)/((1-|zeta|^2)|phi'(zeta)|) through the Newton inverse.
    static MetricField pushforward(const ConformalDomain& domain);
    // Radial Bergman density of A(r,1) from the Laurent series kernel,
    // tabulated once on a graded radial grid and interpolated; accuracy of
    // the table is ~1e-9 relative, floor 1e-4.
    static MetricField annulus_series(double inner_radius);
    // Gram-route finite-difference density for any supported domain.
    static MetricField numeric(const Domain& domain, int degree);
    // Preferred exact-quality route per domain model.
    static MetricField preferred(const Domain& domain);

private:
    Domain domain_;
    Evaluator eval_;
    double floor_;
    std::string tag_;
};

} // namespace planimetric
