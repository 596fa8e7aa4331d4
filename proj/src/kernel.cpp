#include "planimetric/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "planimetric/errors.hpp"
#include "planimetric/geometry.hpp"

namespace planimetric::kernel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Gauss-Legendre rule on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[n - 1 - k] = x;
        nodes[k] = -x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
}

struct Quadrature {
    std::vector<Complex> nodes; // points of the target domain
    std::vector<double> weights;
    int radial_order = 0;
    int angular_order = 0;
};

// Tensor polar rule. For the annulus the radial variable is u = log(rho), so
// Laurent monomials become exponentials and converge to machine precision.
// Conformal images pull back to the disc with Jacobian |phi'|^2, which keeps
// every Gram integrand polynomial and hence exact.
Quadrature build_quadrature(const Domain& domain, int radial, int angular) {
    Quadrature q;
    q.radial_order = radial;
    q.angular_order = angular;
    std::vector<double> gx, gw;
    gauss_legendre(radial, gx, gw);
    q.nodes.reserve(static_cast<std::size_t>(radial) * angular);
    q.weights.reserve(q.nodes.capacity());
    if (const auto* a = std::get_if<Annulus>(&domain)) {
        double L = -std::log(a->inner_radius);
        for (int j = 0; j < radial; ++j) {
            double u = -L + L * 0.5 * (gx[j] + 1.0);
            double rho = std::exp(u);
            double wr = gw[j] * (L * 0.5) * rho * rho;
            for (int i = 0; i < angular; ++i) {
                double theta = 2.0 * kPi * i / angular;
                q.nodes.push_back(std::polar(rho, theta));
                q.weights.push_back(wr * 2.0 * kPi / angular);
            }
        }
        return q;
    }
    double outer = 1.0;
    if (const auto* s = std::get_if<ScaledDisc>(&domain)) outer = s->radius;
    const ConformalDomain* conf = std::get_if<ConformalDomain>(&domain);
    for (int j = 0; j < radial; ++j) {
        double rho = outer * 0.5 * (gx[j] + 1.0);
        double wr = gw[j] * (outer * 0.5) * rho;
        for (int i = 0; i < angular; ++i) {
            double theta = 2.0 * kPi * i / angular;
            Complex zeta = std::polar(rho, theta);
            double w = wr * 2.0 * kPi / angular;
            if (conf) {
                auto [value, deriv] = conf->map->evaluate(zeta);
                q.nodes.push_back(value);
                q.weights.push_back(w * abs2(deriv));
            } else {
                q.nodes.push_back(zeta);
                q.weights.push_back(w);
            }
        }
    }
    return q;
}

double scaled_disc_radius(const Domain& domain) {
    if (const auto* s = std::get_if<ScaledDisc>(&domain)) return s->radius;
    return 1.0;
}

} // namespace

struct OrthonormalBasis::Impl {
    Domain domain;
    BasisKind kind;
    int degree = 0;
    int min_exponent = 0; // 0 for monomial, -degree for Laurent
    Quadrature quad;
    Eigen::VectorXd scale;   // per-column prescale D^{-1/2} applied to raw monomials
    Eigen::LDLT<Eigen::MatrixXcd> factor;
    KernelDiagnostics diag;

    int basis_size() const { return kind == BasisKind::Laurent ? 2 * degree + 1 : degree + 1; }

    void evaluate_raw(Complex z, Eigen::VectorXcd& out) const {
        const int B = basis_size();
        out.resize(B);
        if (kind == BasisKind::Monomial) {
            Complex p{1.0, 0.0};
            for (int j = 0; j < B; ++j) {
                out[j] = p;
                p *= z;
            }
        } else {
            Complex p{1.0, 0.0};
            Complex inv = 1.0 / z;
            out[degree] = p;
            Complex up = z, down = inv;
            for (int j = 1; j <= degree; ++j) {
                out[degree + j] = up;
                out[degree - j] = down;
                up *= z;
                down *= inv;
            }
        }
        out.array() *= scale.array();
    }
};

OrthonormalBasis::OrthonormalBasis(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
OrthonormalBasis::~OrthonormalBasis() = default;
OrthonormalBasis::OrthonormalBasis(OrthonormalBasis&&) noexcept = default;
OrthonormalBasis& OrthonormalBasis::operator=(OrthonormalBasis&&) noexcept = default;

OrthonormalBasis OrthonormalBasis::build(const Domain& domain, BasisKind kind, int degree) {
    if (degree < 1) throw ConfigError("basis degree must be positive");
    if (kind == BasisKind::Laurent && !std::holds_alternative<Annulus>(domain))
        throw UnsupportedDomain("Laurent basis requires an annulus");
    if (std::holds_alternative<PuncturedDisc>(domain))
        throw UnsupportedDomain("punctured disc delegates to the disc basis");

    auto impl = std::make_unique<Impl>();
    impl->domain = domain;
    impl->kind = kind;
    impl->degree = degree;
    impl->min_exponent = kind == BasisKind::Laurent ? -degree : 0;

    // Quadrature orders sized so every Gram entry (and the validation norms
    // up to exponent 2*degree) integrates exactly / to machine precision.
    int map_degree = 1;
    if (const auto* c = std::get_if<ConformalDomain>(&domain)) map_degree = c->map->polynomial_degree();
    int radial = 2 * degree * map_degree + 2 * map_degree + 8;
    int angular = 2 * degree * map_degree + 2 * map_degree + 8;
    if (const auto* a = std::get_if<Annulus>(&domain)) {
        // Radial integrands are exponentials e^{ku}, |k| <= 2*degree+2, on a
        // strip of width L; Gauss-Legendre needs ~L*(degree+1) nodes there.
        double L = -std::log(a->inner_radius);
        radial += 48 + static_cast<int>(std::ceil((degree + 1) * L));
    }
    impl->quad = build_quadrature(domain, radial, angular);

    const int B = impl->basis_size();
    const auto& nodes = impl->quad.nodes;
    const auto& weights = impl->quad.weights;
    const int node_count = static_cast<int>(nodes.size());

    // Gram via chunked adjoint products: rows of M hold sqrt(w) * conj(b(x)).
    impl->scale = Eigen::VectorXd::Ones(B);
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(B, B);
    {
        constexpr int kChunk = 256;
        Eigen::MatrixXcd m(kChunk, B);
        Eigen::VectorXcd row(B);
        int filled = 0;
        for (int i = 0; i < node_count; ++i) {
            impl->evaluate_raw(nodes[i], row);
            m.row(filled++) = std::sqrt(weights[i]) * row.conjugate();
            if (filled == kChunk || i + 1 == node_count) {
                gram.noalias() += m.topRows(filled).adjoint() * m.topRows(filled);
                filled = 0;
            }
        }
    }

    // Symmetric prescale to unit diagonal, then pivoted Cholesky (LDLT).
    Eigen::VectorXd diag = gram.diagonal().real();
    if ((diag.array() <= 0.0).any()) throw IllConditioned("Gram matrix has a nonpositive diagonal");
    impl->scale = diag.array().rsqrt();
    for (int j = 0; j < B; ++j)
        for (int k = 0; k < B; ++k) gram(j, k) *= impl->scale[j] * impl->scale[k];

    impl->factor.compute(gram);
    if (impl->factor.info() != Eigen::Success)
        throw IllConditioned("pivoted Cholesky of the Gram matrix failed");
    Eigen::VectorXd d = impl->factor.vectorD().real();
    double dmin = d.minCoeff(), dmax = d.maxCoeff();
    if (!(dmin > 0.0)) throw IllConditioned("Gram matrix is not positive definite");
    double cond = dmax / dmin;
    if (cond > 1e12) throw IllConditioned("Gram condition number exceeds 1e12");

    impl->diag.degree = degree;
    impl->diag.radial_order = impl->quad.radial_order;
    impl->diag.angular_order = impl->quad.angular_order;
    impl->diag.condition_number = cond;
    // Relative kernel tail of the truncated space at a reference modulus,
    // from the disc model tail sum_{n>N} (n+1) x^n.
    {
        double x = 0.81; // |z| = 0.9 reference
        double tail = std::pow(x, degree + 1) * ((degree + 2) - (degree + 1) * x);
        impl->diag.truncation_error_estimate = tail;
    }

    OrthonormalBasis basis(std::move(impl));

    // Construction-time spot validation of the quadrature against closed
    // forms on circular domains.
    if (!std::holds_alternative<ConformalDomain>(domain)) {
        auto closed_form = [&](int n) -> double {
            if (const auto* a = std::get_if<Annulus>(&domain)) {
                double r = a->inner_radius;
                if (n == -1) return 2.0 * kPi * std::log(1.0 / r);
                return kPi * (1.0 - std::pow(r, 2 * n + 2)) / (n + 1);
            }
            double rho = scaled_disc_radius(domain);
            return kPi * std::pow(rho, 2 * n + 2) / (n + 1);
        };
        std::vector<int> probes{0, 1, degree, 2 * degree};
        if (kind == BasisKind::Laurent) {
            probes.push_back(-2);
            probes.push_back(-degree);
            probes.push_back(-2 * degree);
        }
        for (int n : probes) {
            double want = closed_form(n);
            if (!std::isfinite(want) || want <= 0.0) continue;
            double got = basis.monomial_norm_squared(n);
            if (std::abs(got - want) > 1e-10 * want)
                throw IllConditioned("quadrature failed closed-form validation");
        }
    }
    return basis;
}

double OrthonormalBasis::monomial_norm_squared(int n) const {
    const auto& nodes = impl_->quad.nodes;
    const auto& weights = impl_->quad.weights;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        sum += weights[i] * std::pow(abs2(nodes[i]), n);
    return sum;
}

double OrthonormalBasis::kernel_diag(Complex z) const {
    const Domain& dom = impl_->domain;
    if (!contains(dom, z)) throw PointOutsideDomain("kernel_diag: point not in the domain");
    if (dist_to_boundary(dom, z) < evaluation_floor())
        throw DegenerateQuery("kernel_diag: point below the evaluation floor");
    Eigen::VectorXcd v(impl_->basis_size());
    impl_->evaluate_raw(z, v);
    v = impl_->factor.transpositionsP() * v;
    impl_->factor.matrixL().solveInPlace(v);
    return (v.array().abs2() / impl_->factor.vectorD().real().array()).sum();
}

const KernelDiagnostics& OrthonormalBasis::diagnostics() const { return impl_->diag; }
const Domain& OrthonormalBasis::domain() const { return impl_->domain; }

std::shared_ptr<const OrthonormalBasis> shared_basis(const Domain& domain, BasisKind kind,
                                                     int degree) {
    static std::mutex mutex;
    static std::map<std::tuple<std::string, int, int>, std::shared_ptr<const OrthonormalBasis>> cache;
    auto key = std::make_tuple(domain_label(domain), static_cast<int>(kind), degree);
    std::scoped_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto basis = std::make_shared<const OrthonormalBasis>(OrthonormalBasis::build(domain, kind, degree));
    cache.emplace(std::move(key), basis);
    return basis;
}

double annulus_kernel_diag(double r, Complex z, int truncation, double* tail_bound) {
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("annulus radius must satisfy 0 < r < 1");
    double rho = std::abs(z);
    if (!(rho > r && rho < 1.0))
        throw PointOutsideDomain("annulus_kernel_diag: point not in the annulus");
    if (truncation < 2) throw ConfigError("annulus_kernel_diag: truncation must be >= 2");

    const double x = rho * rho;   // |z|^2, ratio of the n >= 0 terms
    const double r2 = r * r;
    double sum = 0.0;

    // n >= 0: (n+1) x^n / (pi (1 - r^{2n+2})).
    {
        double xp = 1.0;       // x^n
        double rp = r2;        // r^{2n+2}
        for (int n = 0; n <= truncation; ++n) {
            sum += (n + 1) * xp / (kPi * (1.0 - rp));
            xp *= x;
            rp *= r2;
        }
    }
    // n = -1 mode.
    sum += 1.0 / (x * 2.0 * kPi * std::log(1.0 / r));
    // n = -m-2, m >= 0: (m+1) (r^2/x)^m r^2 / (x^2 pi (1 - r^{2m+2})).
    const double g = r2 / x; // < 1 in the annulus
    {
        double gp = 1.0; // g^m
        double rp = r2;  // r^{2m+2}
        const double front = r2 / (x * x * kPi);
        for (int m = 0; m + 2 <= truncation; ++m) {
            sum += front * (m + 1) * gp / (1.0 - rp);
            gp *= g;
            rp *= r2;
        }
    }

    // Geometric tail estimates for both directions.
    auto series_tail = [](double ratio, int from) {
        // sum_{n >= from} (n+1) ratio^n
        double p = std::pow(ratio, from);
        return p * ((from + 1) - from * ratio) / ((1.0 - ratio) * (1.0 - ratio));
    };
    double tail_pos = series_tail(x, truncation + 1) / (kPi * (1.0 - r2));
    double tail_neg = series_tail(g, truncation - 1) * r2 / (x * x * kPi * (1.0 - r2));
    double tail = tail_pos + tail_neg;
    if (tail_bound) *tail_bound = tail;
    if (tail > 1e-10 * sum)
        throw TailTooLarge("annulus_kernel_diag: tail estimate above 1e-10 of the partial sum");
    return sum;
}

double annulus_kernel_diag(double r, Complex z, int truncation) {
    return annulus_kernel_diag(r, z, truncation, nullptr);
}

int annulus_truncation_for(double r, double modulus) {
    // Doubling search on the closed-form tail bounds used above.
    double x = modulus * modulus;
    double g = (r * r) / x;
    auto series_tail = [](double ratio, int from) {
        double p = std::pow(ratio, from);
        return p * ((from + 1) - from * ratio) / ((1.0 - ratio) * (1.0 - ratio));
    };
    // The n=0 term alone lower-bounds the sum.
    double floor_term = 1.0 / (kPi * (1.0 - r * r));
    for (int n = 64;; n *= 2) {
        double tail = series_tail(x, n + 1) / (kPi * (1.0 - r * r)) +
                      series_tail(g, n - 1) * r * r / (x * x * kPi * (1.0 - r * r));
        if (tail <= 0.5e-10 * floor_term) return n;
        if (n > (1 << 26)) throw TailTooLarge("annulus series does not reach the tail target");
    }
}

namespace {

double annulus_log_kernel(double r, double rho) {
    int n = annulus_truncation_for(r, rho);
    return std::log(annulus_kernel_diag(r, Complex(rho, 0.0), n));
}

double annulus_metric_radial(double r, double rho) {
    double d = std::min(rho - r, 1.0 - rho);
    if (d < 1e-4)
        throw DegenerateQuery("bergman_metric_numeric: annulus series floor is 1e-4");
    double h = 1e-4 * d;
    if (rho - 2.0 * h <= r || rho + 2.0 * h >= 1.0)
        throw StencilOutsideDomain("bergman_metric_numeric: stencil leaves the annulus");
    double gm2 = annulus_log_kernel(r, rho - 2.0 * h);
    double gm1 = annulus_log_kernel(r, rho - h);
    double g0 = annulus_log_kernel(r, rho);
    double gp1 = annulus_log_kernel(r, rho + h);
    double gp2 = annulus_log_kernel(r, rho + 2.0 * h);
    double d2 = (-gp2 + 16.0 * gp1 - 30.0 * g0 + 16.0 * gm1 - gm2) / (12.0 * h * h);
    double d1 = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h);
    return std::sqrt(0.25 * (d2 + d1 / rho));
}

double gram_metric(const Domain& domain, Complex z, int degree) {
    double d = dist_to_boundary(domain, z);
    if (d < 1e-2)
        throw DegenerateQuery("bergman_metric_numeric: Gram-route floor is 1e-2");
    const Domain* basis_domain = &domain;
    Domain disc_delegate = UnitDisc{};
    if (std::holds_alternative<PuncturedDisc>(domain)) basis_domain = &disc_delegate;
    auto basis = shared_basis(*basis_domain, BasisKind::Monomial, degree);
    double h = 1e-4 * d;
    auto g = [&](double dx, double dy) {
        Complex p = z + Complex(dx, dy);
        if (!contains(*basis_domain, p))
            throw StencilOutsideDomain("bergman_metric_numeric: stencil leaves the domain");
        return std::log(basis->kernel_diag(p));
    };
    double g0 = g(0.0, 0.0);
    double dxx = (-g(2 * h, 0) + 16.0 * g(h, 0) - 30.0 * g0 + 16.0 * g(-h, 0) - g(-2 * h, 0)) /
                 (12.0 * h * h);
    double dyy = (-g(0, 2 * h) + 16.0 * g(0, h) - 30.0 * g0 + 16.0 * g(0, -h) - g(0, -2 * h)) /
                 (12.0 * h * h);
    return std::sqrt(0.25 * (dxx + dyy));
}

} // namespace

double bergman_metric_numeric(const Domain& domain, Complex z, int degree) {
    if (!contains(domain, z))
        throw PointOutsideDomain("bergman_metric_numeric: point not in the domain");
    if (const auto* a = std::get_if<Annulus>(&domain))
        return annulus_metric_radial(a->inner_radius, std::abs(z));
    return gram_metric(domain, z, degree);
}

double bergman_metric_numeric(const Domain& domain, Complex z) {
    int degree = kDefaultDiscDegree;
    if (std::holds_alternative<ConformalDomain>(domain)) degree = kDefaultConformalDegree;
    return bergman_metric_numeric(domain, z, degree);
}

double kernel_diag_auto(const Domain& domain, Complex z, int degree) {
    if (!contains(domain, z)) throw PointOutsideDomain("kernel_diag_auto: point not in the domain");
    if (std::holds_alternative<UnitDisc>(domain) || std::holds_alternative<PuncturedDisc>(domain)) {
        double s = (1.0 - std::abs(z)) * (1.0 + std::abs(z));
        return 1.0 / (kPi * s * s);
    }
    if (const auto* sd = std::get_if<ScaledDisc>(&domain)) {
        double rho = sd->radius;
        double s = (rho - std::abs(z)) * (rho + std::abs(z));
        return rho * rho / (kPi * s * s);
    }
    if (const auto* a = std::get_if<Annulus>(&domain)) {
        double r = a->inner_radius;
        return annulus_kernel_diag(r, z, annulus_truncation_for(r, std::abs(z)));
    }
    const auto& c = std::get<ConformalDomain>(domain);
    (void)degree;
    Complex zeta = c.map->inverse(z);
    double s = (1.0 - std::abs(zeta)) * (1.0 + std::abs(zeta));
    return 1.0 / (kPi * s * s * abs2(c.map->derivative(zeta)));
}

double kernel_diag_numeric(const Domain& domain, Complex z, int degree) {
    if (const auto* a = std::get_if<Annulus>(&domain))
        return annulus_kernel_diag(a->inner_radius, z,
                                   annulus_truncation_for(a->inner_radius, std::abs(z)));
    const Domain* basis_domain = &domain;
    Domain disc_delegate = UnitDisc{};
    if (std::holds_alternative<PuncturedDisc>(domain)) basis_domain = &disc_delegate;
    return shared_basis(*basis_domain, BasisKind::Monomial, degree)->kernel_diag(z);
}

double kernel_diag_numeric(const Domain& domain, Complex z) {
    int degree = kDefaultDiscDegree;
    if (std::holds_alternative<ConformalDomain>(domain)) degree = kDefaultConformalDegree;
    return kernel_diag_numeric(domain, z, degree);
}

double m_invariant(const Domain& domain, Complex z, int degree) {
    double beta = bergman_metric_numeric(domain, z, degree);
    return beta * std::sqrt(kernel_diag_numeric(domain, z, degree));
}

double m_invariant(const Domain& domain, Complex z) {
    int degree = kDefaultDiscDegree;
    if (std::holds_alternative<ConformalDomain>(domain)) degree = kDefaultConformalDegree;
    return m_invariant(domain, z, degree);
}

} // namespace planimetric::kernel
