#include "planimetric/metric_field.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "planimetric/errors.hpp"
#include "planimetric/geometry.hpp"
#include "planimetric/kernel.hpp"

namespace planimetric {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Radial table of the annulus Bergman density. The tabulated quantity is
// h(u) = log(beta(rho) (rho - r)(1 - rho)) with u = log rho, which stays
// smooth with O(1) derivatives up to both boundaries, so uniform-u
// Catmull-Rom interpolation holds ~1e-10 relative accuracy.
class AnnulusMetricTable {
public:
    explicit AnnulusMetricTable(double r) : r_(r) {
        constexpr int kNodes = 4096;
        constexpr double kEdgeDepth = 1e-5;
        u_min_ = std::log(r + kEdgeDepth);
        u_max_ = std::log(1.0 - kEdgeDepth);
        du_ = (u_max_ - u_min_) / (kNodes - 1);
        h_.resize(kNodes);
        for (int i = 0; i < kNodes; ++i) {
            double rho = std::exp(u_min_ + i * du_);
            double beta = raw_beta(rho);
            h_[i] = std::log(beta * (rho - r_) * (1.0 - rho));
        }
    }

    double operator()(double rho) const {
        double u = std::log(rho);
        if (u < u_min_ || u > u_max_)
            throw MetricEvaluationFailed("annulus metric: radius outside the tabulated range");
        double t = (u - u_min_) / du_;
        int i = std::min(static_cast<int>(t), static_cast<int>(h_.size()) - 2);
        double s = t - i;
        auto at = [&](int j) { return h_[std::clamp(j, 0, static_cast<int>(h_.size()) - 1)]; };
        double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
        double m1 = 0.5 * (p2 - p0), m2 = 0.5 * (p3 - p1);
        double s2 = s * s, s3 = s2 * s;
        double h = (2 * s3 - 3 * s2 + 1) * p1 + (s3 - 2 * s2 + s) * m1 +
                   (-2 * s3 + 3 * s2) * p2 + (s3 - s2) * m2;
        return std::exp(h) / ((rho - r_) * (1.0 - rho));
    }

private:
    // 5-point radial finite differences of the log series kernel; same
    // scheme as kernel::bergman_metric_numeric but valid down to the table
    // edge depth.
    double raw_beta(double rho) const {
        double d = std::min(rho - r_, 1.0 - rho);
        double h = 1e-4 * d;
        auto g = [&](double p) {
            return std::log(
                kernel::annulus_kernel_diag(r_, Complex(p, 0.0), kernel::annulus_truncation_for(r_, p)));
        };
        double gm2 = g(rho - 2 * h), gm1 = g(rho - h), g0 = g(rho), gp1 = g(rho + h),
               gp2 = g(rho + 2 * h);
        double d2 = (-gp2 + 16 * gp1 - 30 * g0 + 16 * gm1 - gm2) / (12 * h * h);
        double d1 = (gm2 - 8 * gm1 + 8 * gp1 - gp2) / (12 * h);
        return std::sqrt(0.25 * (d2 + d1 / rho));
    }

    double r_;
    double u_min_ = 0.0, u_max_ = 0.0, du_ = 1.0;
    std::vector<double> h_;
};

std::shared_ptr<const AnnulusMetricTable> shared_annulus_table(double r) {
    static std::mutex mutex;
    static std::map<double, std::shared_ptr<const AnnulusMetricTable>> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const AnnulusMetricTable>(r);
    cache.emplace(r, table);
    return table;
}

} // namespace

MetricField::MetricField(Domain domain, Evaluator evaluator, double conditioning_floor,
                         std::string accuracy_tag)
    : domain_(std::move(domain)),
      eval_(std::move(evaluator)),
      floor_(conditioning_floor),
      tag_(std::move(accuracy_tag)) {}

double MetricField::operator()(Complex z) const {
    try {
        double beta = eval_(z);
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw MetricEvaluationFailed("metric evaluator returned a nonpositive value");
        return beta;
    } catch (const MetricEvaluationFailed&) {
        throw;
    } catch (const Error& e) {
        throw MetricEvaluationFailed(std::string("metric evaluation failed: ") + e.what());
    }
}

MetricField MetricField::exact_disc() {
    return MetricField(UnitDisc{},
                       [](Complex z) {
                           double m = std::abs(z);
                           if (m >= 1.0)
                               throw MetricEvaluationFailed("exact_disc: point outside the disc");
                           return kSqrt2 / ((1.0 - m) * (1.0 + m));
                       },
                       0.0, "closed-form");
}

MetricField MetricField::pushforward(const ConformalDomain& domain) {
    return MetricField(domain, [domain](Complex z) { return pushforward_bergman_metric(domain, z); },
                       0.0, "pullback-exact");
}

MetricField MetricField::annulus_series(double inner_radius) {
    auto table = shared_annulus_table(inner_radius);
    return MetricField(Annulus{inner_radius},
                       [table](Complex z) { return (*table)(std::abs(z)); }, 1e-4,
                       "series-fd-tabulated");
}

MetricField MetricField::numeric(const Domain& domain, int degree) {
    return MetricField(domain,
                       [domain, degree](Complex z) {
                           return kernel::bergman_metric_numeric(domain, z, degree);
                       },
                       std::holds_alternative<Annulus>(domain) ? 1e-4 : 1e-2, "gram-fd");
}

MetricField MetricField::preferred(const Domain& domain) {
    if (std::holds_alternative<UnitDisc>(domain)) return exact_disc();
    if (std::holds_alternative<PuncturedDisc>(domain)) {
        // The punctured-disc kernel is the disc kernel, so the density is the
        // disc density restricted to D \ {0}.
        return MetricField(PuncturedDisc{},
                           [](Complex z) {
                               double m = std::abs(z);
                               if (m >= 1.0 || m == 0.0)
                                   throw MetricEvaluationFailed("punctured disc: point outside");
                               return kSqrt2 / ((1.0 - m) * (1.0 + m));
                           },
                           0.0, "closed-form");
    }
    if (const auto* s = std::get_if<ScaledDisc>(&domain)) {
        double radius = s->radius;
        return MetricField(*s,
                           [radius](Complex z) {
                               double m = std::abs(z);
                               if (m >= radius)
                                   throw MetricEvaluationFailed("scaled disc: point outside");
                               return kSqrt2 * radius / ((radius - m) * (radius + m));
                           },
                           0.0, "closed-form");
    }
    if (const auto* a = std::get_if<Annulus>(&domain)) return annulus_series(a->inner_radius);
    return pushforward(std::get<ConformalDomain>(domain));
}

} // namespace planimetric
