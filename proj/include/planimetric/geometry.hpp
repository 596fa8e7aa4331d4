#pragma once

#include <vector>

#include "planimetric/domains.hpp"

namespace planimetric {

// Sampled boundary, one closed loop per component. The first vertex is not
// repeated; the closing edge is implied.
struct BoundaryPolyline {
    struct Loop {
        std::vector<Complex> vertices;
    };
    std::vector<Loop> loops;
    // Target relative accuracy of dist_to_boundary queries served from this
    // sampling density.
    double target_relative_accuracy = 1e-6;

    int component_count() const { return static_cast<int>(loops.size()); }
};

// True iff z lies in the open domain. Boundary points report false.
bool contains(const Domain& domain, Complex z);

// Euclidean distance to the boundary, d_D(z). Exact for circular models;
// conformal images go through the sampled boundary refined to the declared
// relative accuracy (1e-6). Throws PointOutsideDomain when membership fails
// and DegenerateQuery within 1e-14 of the boundary.
double dist_to_boundary(const Domain& domain, Complex z);

// n >= 8 points per boundary component at uniform parameter (angle, or
// pre-image angle for conformal images). Outer loop is counterclockwise,
// inner loops clockwise. The puncture of the punctured disc has no polyline
// representation and is omitted (it is still honored by dist_to_boundary).
BoundaryPolyline boundary_polyline(const Domain& domain, int n);

} // namespace planimetric
