#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace bellvol {

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using RationalVector = std::vector<Rational>;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
/// Accepts "p", "-p", "p/q"; throws DomainError on malformed input or a zero denominator.
Rational parse_rational(std::string_view s);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace bellvol
