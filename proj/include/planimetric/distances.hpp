#pragma once

#include <string>
#include <vector>

#include "planimetric/disc.hpp"
#include "planimetric/metric_field.hpp"

namespace planimetric {

// Sampled curve, implicitly parametrized uniformly on [0,1].
struct Curve {
    std::vector<Complex> samples;
};

enum class Method { ClosedForm, Pullback, GraphGeodesic, CoveringOrbit };

std::string method_name(Method m);

struct DistanceEstimate {
    double value = 0.0;
    Method method = Method::ClosedForm;
    // Lower/upper slack around value. ClosedForm and Pullback carry zero
    // bracket (arithmetic-level error only).
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// n samples along the shorter arc of the circle through z and w orthogonal
// to the unit circle (straight chord when z, w, 0 are collinear). Endpoints
// are exactly z and w. Throws CoincidentPoints when z == w.
Curve disc_geodesic_curve(const disc::DiscPair& p, int n);

// Midpoint rule: sum beta(midpoint_i) * |chord_i|.
double integrate_metric(const Curve& curve, const MetricField& metric);

// Shortest path on a domain-adapted polar grid with a 16-neighbor stencil
// and metric edge weights, followed by a Gauss-Seidel smoothing pass of the
// polyline. Returns an upper-bound estimate; the bracket is the change from
// the previous (half) refinement. Graphs are cached per (domain, metric tag,
// resolution) and shared read-only.
DistanceEstimate graph_geodesic(const Domain& domain, const MetricField& metric, Complex z,
                                Complex w, int resolution);

constexpr int kDefaultGraphResolution = 96;
constexpr int kDefaultOrbitBound = 8;

// Integrated Bergman distance. Routes: disc closed form, conformal image by
// pullback of the disc distance, punctured disc by delegation to the disc
// (identical kernel), annulus by graph geodesic over the series metric.
DistanceEstimate bergman_distance(const Domain& domain, Complex z, Complex w);
DistanceEstimate bergman_distance(const Domain& domain, Complex z, Complex w, int resolution);

// Kobayashi distance. Disc/conformal: closed form / pullback. Annulus and
// punctured disc: minimum over deck translates (|k| <= k_max) of the
// universal-cover distance, with a truncation certificate that the |k|=k_max
// translates already exceed the attained minimum.
DistanceEstimate kobayashi_distance(const Domain& domain, Complex z, Complex w);
DistanceEstimate kobayashi_distance(const Domain& domain, Complex z, Complex w, int k_max);

// Carathéodory distance on simply connected models, where the Riemann map
// realizes the defining supremum; UnsupportedDomain otherwise.
DistanceEstimate caratheodory_distance(const Domain& domain, Complex z, Complex w);

// Hyperbolic distance of the upper half-plane in the tanh^-1 normalization.
double half_plane_distance(Complex w1, Complex w2);

} // namespace planimetric
