#include "planimetric/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "planimetric/errors.hpp"

namespace planimetric {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed area test for segment intersection, strict interiors only.
bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
    auto orient = [](Complex p, Complex q, Complex r) {
        double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
                   (q.imag() - p.imag()) * (r.real() - p.real());
        return (v > 0.0) - (v < 0.0);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

} // namespace

ConformalMap::ConformalMap(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
    for (Complex a : coeffs_)
        if (!is_finite(a)) throw InvalidDomain("conformal coefficient is not finite");

    // |phi'| sampled on a 512x512 polar grid of the closed disc.
    double margin = std::numeric_limits<double>::infinity();
    constexpr int kRad = 512, kAng = 512;
    for (int j = 0; j < kRad; ++j) {
        double rho = static_cast<double>(j + 1) / kRad;
        for (int i = 0; i < kAng; ++i) {
            double theta = 2.0 * kPi * i / kAng;
            Complex zeta = std::polar(rho, theta);
            margin = std::min(margin, std::abs(evaluate(zeta).second));
        }
    }
    if (!(margin > 0.0) || margin < 1e-6)
        throw InvalidDomain("conformal map derivative vanishes on the closed disc");
    injectivity_margin_ = margin;

    // Boundary curve sampled at 4096 points; reject self-intersection.
    constexpr int kB = 4096;
    std::vector<Complex> bd(kB);
    for (int i = 0; i < kB; ++i) bd[i] = map(std::polar(1.0, 2.0 * kPi * i / kB));
    std::vector<double> xlo(kB), xhi(kB), ylo(kB), yhi(kB);
    for (int i = 0; i < kB; ++i) {
        Complex a = bd[i], b = bd[(i + 1) % kB];
        xlo[i] = std::min(a.real(), b.real());
        xhi[i] = std::max(a.real(), b.real());
        ylo[i] = std::min(a.imag(), b.imag());
        yhi[i] = std::max(a.imag(), b.imag());
    }
    for (int i = 0; i < kB; ++i) {
        for (int j = i + 2; j < kB; ++j) {
            if (i == 0 && j == kB - 1) continue; // shared endpoint with closing edge
            if (xhi[i] < xlo[j] || xhi[j] < xlo[i] || yhi[i] < ylo[j] || yhi[j] < ylo[i])
                continue;
            if (segments_cross(bd[i], bd[(i + 1) % kB], bd[j], bd[(j + 1) % kB]))
                throw InvalidDomain("conformal boundary curve self-intersects");
        }
    }
}

std::pair<Complex, Complex> ConformalMap::evaluate(Complex zeta) const {
    // phi(zeta) = zeta(1 + a_1 zeta + a_2 zeta^2 + ...), Horner on the inner factor.
    Complex p{0.0, 0.0};
    Complex dp{0.0, 0.0}; // derivative of the inner polynomial q(zeta) = 1 + sum a_k zeta^k
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dp = dp * zeta + p;
        p = p * zeta + *it;
    }
    dp = dp * zeta + p;
    p = p * zeta + 1.0;
    // phi = zeta * q, phi' = q + zeta q'
    return {zeta * p, p + zeta * dp};
}

Complex ConformalMap::inverse(Complex z) const {
    Complex zeta = z;
    if (std::abs(zeta) > 1.0) zeta /= std::abs(zeta) + 1e-3;
    double residual = std::abs(map(zeta) - z);
    for (int iter = 0; iter < 50; ++iter) {
        if (residual <= 1e-12) break;
        auto [value, deriv] = evaluate(zeta);
        Complex step = (value - z) / deriv;
        // Damped update: halve the step while it does not reduce the residual.
        double scale = 1.0;
        Complex next = zeta - step;
        double next_res = std::abs(map(next) - z);
        for (int halving = 0; halving < 8 && !(next_res < residual); ++halving) {
            scale *= 0.5;
            next = zeta - scale * step;
            next_res = std::abs(map(next) - z);
        }
        zeta = next;
        residual = next_res;
    }
    if (!(residual <= 1e-12))
        throw NoConvergence("inverse_map: Newton residual " + std::to_string(residual) +
                            " after 50 iterations (point outside or near the boundary)");
    if (!(std::abs(zeta) < 1.0 - 1e-14))
        throw NoConvergence("inverse_map: preimage lies on or outside the unit circle");
    return zeta;
}

double pushforward_bergman_metric(const ConformalDomain& domain, Complex z) {
    Complex zeta = domain.map->inverse(z);
    double one_minus = (1.0 - std::abs(zeta)) * (1.0 + std::abs(zeta));
    return std::numbers::sqrt2 / (one_minus * std::abs(domain.map->derivative(zeta)));
}

namespace {

void require_only_keys(const nlohmann::json& spec, std::initializer_list<const char*> keys) {
    for (auto it = spec.begin(); it != spec.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) throw ConfigError("unknown domain field: " + it.key());
    }
}

} // namespace

Domain domain_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
        throw ConfigError("domain spec must be an object with a \"type\" string");
    const std::string type = spec["type"].get<std::string>();
    if (type == "disc") {
        require_only_keys(spec, {"type"});
        return UnitDisc{};
    }
    if (type == "punctured_disc") {
        require_only_keys(spec, {"type"});
        return PuncturedDisc{};
    }
    if (type == "annulus") {
        require_only_keys(spec, {"type", "r"});
        if (!spec.contains("r") || !spec["r"].is_number())
            throw ConfigError("annulus requires a numeric \"r\"");
        double r = spec["r"].get<double>();
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("annulus radius must satisfy 0 < r < 1");
        return Annulus{r};
    }
    if (type == "conformal") {
        require_only_keys(spec, {"type", "coeffs"});
        if (!spec.contains("coeffs") || !spec["coeffs"].is_array())
            throw ConfigError("conformal requires a \"coeffs\" array");
        std::vector<Complex> coeffs;
        for (const auto& c : spec["coeffs"]) {
            if (c.is_number()) {
                coeffs.emplace_back(c.get<double>(), 0.0);
            } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
                coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
            } else {
                throw ConfigError("conformal coefficients must be numbers or [re,im] pairs");
            }
        }
        try {
            return ConformalDomain(std::move(coeffs));
        } catch (const InvalidDomain& e) {
            throw ConfigError(std::string("invalid conformal map: ") + e.what());
        }
    }
    throw ConfigError("unknown domain type: " + type);
}

nlohmann::json domain_to_json(const Domain& domain) {
    nlohmann::json j;
    if (std::holds_alternative<UnitDisc>(domain)) {
        j["type"] = "disc";
    } else if (std::holds_alternative<PuncturedDisc>(domain)) {
        j["type"] = "punctured_disc";
    } else if (const auto* a = std::get_if<Annulus>(&domain)) {
        j["type"] = "annulus";
        j["r"] = a->inner_radius;
    } else if (const auto* c = std::get_if<ConformalDomain>(&domain)) {
        j["type"] = "conformal";
        auto coeffs = nlohmann::json::array();
        for (Complex a : c->map->coefficients()) {
            if (a.imag() == 0.0)
                coeffs.push_back(a.real());
            else
                coeffs.push_back(nlohmann::json::array({a.real(), a.imag()}));
        }
        j["coeffs"] = coeffs;
    } else {
        throw ConfigError("scaled disc is not part of the domain JSON schema");
    }
    return j;
}

std::string domain_label(const Domain& domain) {
    std::ostringstream out;
    if (std::holds_alternative<UnitDisc>(domain)) {
        out << "disc";
    } else if (std::holds_alternative<PuncturedDisc>(domain)) {
        out << "punctured_disc";
    } else if (const auto* s = std::get_if<ScaledDisc>(&domain)) {
        out << "disc(radius=" << format_double(s->radius) << ")";
    } else if (const auto* a = std::get_if<Annulus>(&domain)) {
        out << "annulus(r=" << format_double(a->inner_radius) << ")";
    } else {
        const auto& c = std::get<ConformalDomain>(domain);
        out << "conformal[";
        bool first = true;
        for (Complex a : c.map->coefficients()) {
            if (!first) out << ';';
            first = false;
            out << format_complex(a);
        }
        out << ']';
    }
    return out.str();
}

} // namespace planimetric
