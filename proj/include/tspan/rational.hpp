#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace tspan {

// All numeric values in this library are exact rationals backed by GMP.
// Arithmetic results are always canonical (lowest terms, positive
// denominator); construction from strings goes through parse_rational
// below, never through the raw mpq string constructor, which does not
// canonicalize.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Parses "p", "-p" or "p/q" with arbitrary-precision integers.
/// Rejects anything else (floats, whitespace, empty input, zero
/// denominators).
Rational parse_rational(const std::string& text);

/// Renders a rational as "p" or "p/q" in lowest terms.
std::string to_string(const Rational& value);

/// 2^-k, used for iteration tolerances.
Rational pow2_inverse(unsigned k);

std::string to_string(const RationalVector& values);

}  // namespace tspan
