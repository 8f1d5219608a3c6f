#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace gdof {

// Exponents (alpha, beta, eta) and GDoF values are exact rationals so that
// regime boundaries such as alpha = 1/2 are decided without rounding.
using Rational = boost::rational<std::int64_t>;
// Compare with Rational(k) rather than a bare int: boost's mixed int/rational
// operator== recurses forever under C++20 rewritten comparisons.

/// Parses "p/q" or an integer "p". Decimal notation is rejected: a value
/// such as 0.6667 would silently land on the wrong side of 2/3.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Fixed-point decimal rendering with the given number of fractional digits.
std::string to_decimal(const Rational& r, int digits = 12);

double to_double(const Rational& r);

/// (x)^+ = max(0, x).
inline Rational positive_part(const Rational& x) { return x < 0 ? Rational(0) : x; }

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace gdof
