#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planimetric/distances.hpp"

namespace planimetric::verify {

struct DepthLadder {
    std::vector<double> depths{1e-1, 1e-2, 1e-3};
};

// Deterministic sample generator spec for one certificate run.
struct SamplePlan {
    Domain domain;
    std::uint64_t seed = 1;
    int pair_count = 2000;        // random interior pairs
    int directions = 12;          // structured boundary directions per rung
    DepthLadder ladder;
    int graph_resolution = kDefaultGraphResolution;
    int orbit_bound = kDefaultOrbitBound;
};

struct SampleRow {
    int sample_id = 0;
    Complex z;
    Complex w;
    double value = 0.0;
    double bound_lo = 0.0;
    double bound_hi = 0.0;
    double margin = 0.0;
};

// Empirical witness for one claim: constants, worst margin over the sample
// set, and the verdict. `observed <= threshold` is the pass predicate, so
// passing at a tolerance implies passing at any larger one.
struct Certificate {
    std::string claim_id;
    std::string domain;
    std::uint64_t seed = 0;
    int sample_count = 0;
    std::map<std::string, double> constants;
    double worst_margin = 0.0;
    double observed = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::map<std::string, double> diagnostics;
    std::vector<SampleRow> rows;

    bool passes_at(double tolerance) const { return observed <= tolerance; }
};

// Lemma 4 enclosure suite: over seeded random disc pairs, both two-sided
// bounds must enclose b/sqrt2 up to 1e-12 relative slack.
Certificate lemma4_enclosure(const SamplePlan& plan);

// Smallest c >= 1 with
//   sqrt2 log(1 + |z-w|/(c sqrt(d(z)d(w)))) <= b <= sqrt2 log(1 + c|z-w|/sqrt(d(z)d(w)))
// over every sampled pair (both sides solved for c in closed form), plus the
// induced Far/Near bound-form consistency counts. Constants per-rung record
// the cumulative c when the ladder is cut at that rung.
Certificate prop1_certificate(const SamplePlan& plan);

// sup |b - sqrt2 c| (simply connected only) and sup |b - sqrt2 k| per rung.
Certificate corollary2_gap(const SamplePlan& plan);

// Ratio b/(sqrt2 k) for three base points against a boundary-approaching w;
// reports |ratio-1| per rung and the monotone-trend verdict.
Certificate prop3_sweep(const SamplePlan& plan);

// d_D(u) * beta_D(u;1) along inward normals at ladder depths vs sqrt(2)/2.
Certificate remark_d_limit(const SamplePlan& plan);

enum class SharpnessRegime { SmallS, LargeS, LowerB, UpperB };

// Sharpness sweeps for the Lemma 4 constants {1, 2, 1/2, sqrt2}; the (b)
// regimes run the iterated limit with the outer parameter first.
Certificate lemma4_sharpness_sweep(SharpnessRegime regime);

// kernel_diag and m_invariant must not increase under domain inclusion.
Certificate monotonicity_check(const Domain& inner, const Domain& outer,
                               const std::vector<Complex>& points);

// Punctured-disc contrast: k(0.5, w) grows along the ladder while b(0.5, w)
// stays the disc value.
Certificate isolated_point_check(const DepthLadder& ladder);

nlohmann::ordered_json certificate_to_json(const Certificate& cert);

} // namespace planimetric::verify
