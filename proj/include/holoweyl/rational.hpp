#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace holoweyl {

// Exact coefficient field. mpq_class keeps every value canonical: the
// denominator is positive, gcd(|num|, den) = 1 and zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (q != 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

}  // namespace holoweyl
