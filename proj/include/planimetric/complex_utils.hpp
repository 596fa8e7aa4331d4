#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "planimetric/errors.hpp"

namespace planimetric {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double abs2(Complex z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

// Parses "re", "re+imi", "re-imi", "imi", "i", "-i". Whitespace not allowed.
Complex parse_complex(std::string_view text);

// Round-trip formatting with shortest-exact doubles, e.g. "0.5-0.25i".
std::string format_complex(Complex z);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

} // namespace planimetric
