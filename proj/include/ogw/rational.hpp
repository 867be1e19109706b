#pragma once

// Exact rational scalars.  Every coefficient in the engine is a
// boost::multiprecision::cpp_rational; no floating point appears anywhere in
// the core, so all identities are checked with tolerance zero.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>

#include "ogw/errors.hpp"

namespace ogw {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical text form: "p" for integers, "p/q" otherwise, q > 0.
inline std::string rational_to_string(const Rational& r) {
    return r.str();
}

// Strict parser for rational literals: [+|-] digits [/ digits].
// Decimal points, exponents, whitespace and empty strings are rejected;
// config files must spell every scalar exactly.
inline Rational rational_from_string(const std::string& text) {
    const auto fail = [&]() -> Rational {
        throw ConfigError("invalid rational literal '" + text +
                          "' (expected integer or numerator/denominator)");
    };
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t num_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_begin) return fail();
    std::string num = text.substr(0, i);
    if (i == text.size()) return Rational(Integer(num));
    if (text[i] != '/') return fail();
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) return fail();
    Integer den(text.substr(den_begin));
    if (den == 0) throw ConfigError("zero denominator in rational literal '" + text + "'");
    return Rational(Integer(num), den);
}

// Floor of a nonnegative rational, as a machine integer (used for exponent
// bounds in bounded enumerations; values are tiny).
inline long rational_floor_long(const Rational& r) {
    Integer q = numerator(r) / denominator(r);
    if (q * denominator(r) > numerator(r)) --q;  // round toward -inf
    return static_cast<long>(q);
}

}  // namespace ogw
