#pragma once

#include <memory>
#include <string>

#include "planimetric/domains.hpp"

namespace planimetric::kernel {

enum class BasisKind {
    Monomial, // z^n, n = 0..N
    Laurent,  // z^n, n = -N..N (annulus only)
};

struct KernelDiagnostics {
    int degree = 0;
    int radial_order = 0;
    int angular_order = 0;
    double condition_number = 1.0;
    double truncation_error_estimate = 0.0;
};

// Quadrature-orthonormalized monomial/Laurent basis of the truncated Bergman
// space. The Gram matrix is assembled on a tensor polar grid (Gauss-Legendre
// radial x trapezoid angular; log-radial nodes on the annulus so negative
// powers integrate to machine precision) and factored by pivoted Cholesky.
// Construction fails with IllConditioned when the scaled Gram condition
// number exceeds 1e12.
class OrthonormalBasis {
public:
    static OrthonormalBasis build(const Domain& domain, BasisKind kind, int degree);

    // Bergman kernel diagonal K_B(z,z) = sum_j |phi_j(z)|^2 of the truncated
    // space. Requires an interior z with d_D(z) above the evaluation floor.
    double kernel_diag(Complex z) const;

    const KernelDiagnostics& diagnostics() const;
    const Domain& domain() const;
    double evaluation_floor() const { return 1e-3; }

    // Quadrature check used by construction-time validation: integral of
    // |z^n|^2 over the domain for exponents up to 2*degree.
    double monomial_norm_squared(int n) const;

    ~OrthonormalBasis();
    OrthonormalBasis(OrthonormalBasis&&) noexcept;
    OrthonormalBasis& operator=(OrthonormalBasis&&) noexcept;
    OrthonormalBasis(const OrthonormalBasis&) = delete;
    OrthonormalBasis& operator=(const OrthonormalBasis&) = delete;

private:
    struct Impl;
    explicit OrthonormalBasis(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
};

// Shared read-only basis cache keyed by (domain label, kind, degree).
std::shared_ptr<const OrthonormalBasis> shared_basis(const Domain& domain, BasisKind kind,
                                                     int degree);

// Classical Laurent series for the annulus A(r,1) kernel diagonal:
//   sum_{n != -1} (n+1)|z|^{2n} / (pi (1 - r^{2n+2}))
//   + |z|^{-2} / (2 pi log(1/r)),
// truncated at |n| <= truncation. Throws TailTooLarge when the geometric
// tail estimate exceeds 1e-10 of the partial sum.
double annulus_kernel_diag(double r, Complex z, int truncation);
double annulus_kernel_diag(double r, Complex z, int truncation, double* tail_bound);

// Truncation order making the series tail provably below 1e-10 relative.
int annulus_truncation_for(double r, double modulus);

// Default Gram-route degrees used when the caller does not pin one.
constexpr int kDefaultDiscDegree = 100;
constexpr int kDefaultLaurentDegree = 60;
constexpr int kDefaultConformalDegree = 60;

// beta_D(z;1) = sqrt(dd log K_B(z,z)) by 5-point central differences of
// log kernel_diag with step 1e-4 * d_D(z) per axis; annuli and the
// punctured-disc/disc pair use the radial form (g'' + g'/rho)/4 on the
// series kernel. Gram route requires d_D(z) >= 1e-2, series route 1e-4.
double bergman_metric_numeric(const Domain& domain, Complex z);
double bergman_metric_numeric(const Domain& domain, Complex z, int degree);

// M_D(z;1) = beta_D(z;1) * sqrt(K_B(z,z)).
double m_invariant(const Domain& domain, Complex z);
double m_invariant(const Domain& domain, Complex z, int degree);

// Kernel diagonal through the exact route for the domain: closed form on
// discs and conformal images (via the map), Laurent series on the annulus.
double kernel_diag_auto(const Domain& domain, Complex z, int degree);

// Kernel diagonal through the computed route: Laurent series on the annulus,
// Gram basis otherwise (punctured disc delegates to the disc basis).
double kernel_diag_numeric(const Domain& domain, Complex z, int degree);
double kernel_diag_numeric(const Domain& domain, Complex z);

} // namespace planimetric::kernel
