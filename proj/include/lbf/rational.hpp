#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lbf {

using Integer = mpz_class;

/// Exact rational number; gmpxx keeps it canonical (lowest terms, den > 0)
/// after every arithmetic operation.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws ArithmeticError when den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "[-]int[/nat]"; throws ParseError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

/// True when r fits a signed 64-bit numerator and denominator.
bool fits_int64(const Rational& r);

}  // namespace lbf
