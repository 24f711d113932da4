#ifndef LECERT_RATIONAL_HPP
#define LECERT_RATIONAL_HPP

#include <string>
#include <string_view>
#include <boost/multiprecision/gmp.hpp>

namespace lecert {

// GMP rationals are always canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p" or "p/q" with an optional leading sign. Throws lecert::Error
/// on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

}   // namespace lecert

#endif
