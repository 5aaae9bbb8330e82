#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fliess {

/// Exact rational scalar. GMP keeps it canonical: positive denominator,
/// coprime parts, zero as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `int` or `int/int` (optional leading sign). Throws ValidationError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

/// Binomial coefficient n choose k.
Integer binomial(unsigned n, unsigned k);

}  // namespace fliess
