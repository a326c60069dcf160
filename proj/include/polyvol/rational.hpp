#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyvol/double_double.hpp"

namespace polyvol {

/// Arbitrary-precision integer and rational. cpp_rational keeps values in
/// lowest terms with a positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Nearest double plus the rounded remainder.
inline DoubleDouble to_double_double(const Rational& q) {
  const double hi = to_double(q);
  return {hi, to_double(q - Rational(hi))};
}

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q" with decimal integers. Throws polyvol::Error.
Rational parse_rational(std::string_view text);

/// Exact binomial coefficient.
BigInt binomial(unsigned n, unsigned k);

/// Exact factorial.
BigInt factorial(unsigned n);

}  // namespace polyvol
