#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hybridrat {

/// Exact rational number, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Serializes as "p" or "p/q".
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

Rational make_rational(long num, long den = 1);
/// num/den in lowest terms.
Rational ratio(const Integer& num, const Integer& den);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Denominator of `q` as a machine integer. Throws std::overflow_error if it does not fit.
std::int64_t denominator_of(const Rational& q);
std::int64_t to_int64(const Integer& n);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Natural logarithm of |q| for q != 0, accurate for arbitrarily large numerators and denominators.
double log_abs(const Rational& q);

/// Rational roots of the polynomial with the given ascending coefficients, sorted and without repetition.
std::vector<Rational> rational_roots(const std::vector<Rational>& ascending);

}  // namespace hybridrat
