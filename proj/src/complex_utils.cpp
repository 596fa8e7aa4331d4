#include "planimetric/complex_utils.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace planimetric {

std::string format_double(double x) {
    // Shortest decimal that round-trips. 17 significant digits always
    // round-trip for IEEE doubles; try shorter forms first.
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

namespace {

// Parses one signed real starting at pos; advances pos past it.
double parse_real(std::string_view text, std::size_t& pos) {
    const char* begin = text.data() + pos;
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin) throw ConfigError("invalid complex literal: " + std::string(text));
    pos += static_cast<std::size_t>(end - begin);
    return value;
}

} // namespace

Complex parse_complex(std::string_view text) {
    if (text.empty()) throw ConfigError("empty complex literal");
    double re = 0.0, im = 0.0;
    std::size_t pos = 0;

    auto is_sign = [](char c) { return c == '+' || c == '-'; };
    auto bare_i = [&](std::size_t p) {
        // "i" possibly preceded by a sign only.
        return text[p] == 'i' && p + 1 == text.size();
    };

    // First term. Handle "i", "+i", "-i" without digits.
    if (bare_i(pos) || (is_sign(text[pos]) && pos + 1 < text.size() && bare_i(pos + 1))) {
        im = text[pos] == '-' ? -1.0 : 1.0;
        return {0.0, im};
    }
    double first = parse_real(text, pos);
    if (pos < text.size() && text[pos] == 'i') {
        ++pos;
        if (pos != text.size()) throw ConfigError("trailing characters in complex literal: " + std::string(text));
        return {0.0, first};
    }
    re = first;
    if (pos == text.size()) return {re, 0.0};

    // Second term must be a signed imaginary part ending in 'i'.
    if (!is_sign(text[pos])) throw ConfigError("invalid complex literal: " + std::string(text));
    if (bare_i(pos + 1)) {
        im = text[pos] == '-' ? -1.0 : 1.0;
        return {re, im};
    }
    im = parse_real(text, pos);
    if (pos >= text.size() || text[pos] != 'i' || pos + 1 != text.size())
        throw ConfigError("invalid complex literal: " + std::string(text));
    return {re, im};
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string out;
    if (z.real() != 0.0) {
        out = format_double(z.real());
        if (z.imag() > 0.0) out += '+';
    }
    out += format_double(z.imag());
    out += 'i';
    return out;
}

} // namespace planimetric
