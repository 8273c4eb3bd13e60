#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace arbor {

using Integer = mpz_class;

/// GMP rationals are kept canonical by every arithmetic operation:
/// lowest terms, positive denominator, zero as 0/1.
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws InvalidArgument on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "7", "-3/4", "+12". Throws InvalidArgument on malformed text.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

/// |a|, exact.
Rational abs(const Rational& value);

/// Exact power with nonnegative exponent.
Rational pow(const Rational& base, unsigned long exponent);
Integer pow(const Integer& base, unsigned long exponent);

/// Bit length of |value| (0 for zero).
std::size_t bit_length(const Integer& value);

}  // namespace arbor
