#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace cohpoly {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// 166-bit significand float used wherever exact arithmetic is not
/// available but double would lose the Hankel structure.
using Extended = boost::multiprecision::cpp_bin_float_50;

/// Parses "p/q", an integer, or a decimal literal such as "-1.25e-3".
/// Decimals are converted exactly (0.1 becomes 1/10).
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline Extended to_extended(const Rational& value) { return static_cast<Extended>(value); }

/// Exact rational with the same value as a finite double.
Rational from_double(double value);

}  // namespace cohpoly
