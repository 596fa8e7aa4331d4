#pragma once

#include "planimetric/complex_utils.hpp"

namespace planimetric::disc {

// Pair of points of the open unit disc. Construction validates |z|,|w| < 1.
struct DiscPair {
    Complex z;
    Complex w;

    DiscPair(Complex z_, Complex w_);
};

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

// |(z-w)/(1 - conj(z) w)| in [0,1).
double pseudo_hyperbolic(const DiscPair& p);

// atanh of the pseudo-hyperbolic distance, computed as the stable half-log
// quotient; near m=1 the 1-m factor is rewritten through
// |1-conj(z)w|^2 = (1-|z|^2)(1-|w|^2) + |z-w|^2 to avoid cancellation.
double kobayashi_disc(const DiscPair& p);

// sqrt(2) * kobayashi_disc.
double bergman_disc(const DiscPair& p);

// Two-sided bounds on bergman_disc/sqrt(2):
//   log(1 +  |z-w| / sqrt((1-|z|^2)(1-|w|^2)))  <= b/sqrt2
//   <= log(1 + 2|z-w| / sqrt((1-|z|^2)(1-|w|^2)))
BoundPair lemma4a_bounds(const DiscPair& p);

// Same quantity bounded through boundary distances d(.) = 1 - |.|:
//   log(1 + |z-w| / (2 sqrt(d(z)d(w))))  <= b/sqrt2
//   <= log(1 + sqrt(2)|z-w| / sqrt(d(z)d(w)))
BoundPair lemma4b_bounds(const DiscPair& p);

// R = (exp(b/sqrt2) - 1) * sqrt((1-|z|^2)(1-|w|^2)) / |z-w|, always in [1,2].
// Throws CoincidentPoints when z == w.
double sharpness_ratio_a(const DiscPair& p);

enum class ProximityCase { Far, Near };

// Far iff dist^2 > dz*dw; equality goes to Near.
ProximityCase prop1prime_classify(double dist, double dz, double dw);

} // namespace planimetric::disc
