#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace presdist {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-3/4" or "2.125" into an exact rational. Throws
/// std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

/// Canonical form: "n" when the denominator is 1, otherwise "n/d" with d > 0.
std::string rational_to_string(const Rational& value);

Rational rational_pow(const Rational& base, unsigned exponent);

inline Rational rational_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

inline double rational_to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace presdist
