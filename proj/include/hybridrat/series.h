#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hybridrat/errors.h"
#include "hybridrat/rational.h"

namespace hybridrat {

/// Exponent units kept past the leading term when a division has to be expanded as a series.
inline constexpr long kDefaultRelativePrecision = 64;

/// Additive valuation: a rational number or +infinity.
class Valuation {
 public:
  Valuation() = default;  // +infinity
  explicit Valuation(Rational v) : value_(std::move(v)) {}
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Throws std::logic_error when infinite.
  const Rational& value() const;

  friend bool operator==(const Valuation& a, const Valuation& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);

  std::string to_string() const;

 private:
  std::optional<Rational> value_;
};

/// One nonzero term c * t^(exponent / e) of a Puiseux series with ramification index e.
struct Term {
  std::int64_t exponent;
  Rational coeff;
};

/// Truncated Puiseux series sum_k c_k t^(k/e) with rational coefficients.
///
/// A series either is exact (finitely many terms, nothing unknown) or carries a truncation order tau:
/// every exponent >= tau is unknown. Values are immutable; all operations return new series.
/// Equality is only offered below the common truncation order (see agrees_with).
class PuiseuxSeries {
 public:
  /// The exact zero series.
  PuiseuxSeries() = default;
  PuiseuxSeries(const Rational& c);  // NOLINT(google-explicit-constructor)
  PuiseuxSeries(long c) : PuiseuxSeries(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static PuiseuxSeries monomial(const Rational& coeff, const Rational& exponent);
  static PuiseuxSeries t() { return monomial(1, 1); }
  /// O(t^tau): zero up to truncation.
  static PuiseuxSeries unknown(const Rational& tau);
  /// Builds a series from (numerator exponent, coefficient) pairs over index `e`. Terms may be unsorted,
  /// repeated (they are summed) or zero; terms at or beyond `precision` (in units of 1/e) are dropped.
  static PuiseuxSeries from_terms(std::int64_t e, std::vector<Term> terms,
                                  std::optional<std::int64_t> precision = std::nullopt);

  std::int64_t ramification() const { return e_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_exact() const { return !precision_.has_value(); }
  /// Truncation order tau as a rational exponent, or nullopt for exact series.
  std::optional<Rational> precision() const;
  /// Truncation order in units of 1/e.
  const std::optional<std::int64_t>& precision_units() const { return precision_; }

  /// Leading exponent; +infinity when no term is known below tau.
  Valuation valuation() const;
  /// Largest value the valuation is known to be at least: the valuation, or tau for O(t^tau).
  Valuation valuation_lower_bound() const;
  bool is_zero() const { return terms_.empty() && is_exact(); }
  bool is_unknown_zero() const { return terms_.empty() && !is_exact(); }
  bool has_known_terms() const { return !terms_.empty(); }

  /// Coefficient of t^q. Throws PrecisionExhausted when q is at or past the truncation order.
  Rational coefficient(const Rational& q) const;
  const Rational& leading_coefficient() const;
  /// Coefficient at exponent 0. Throws NegativeValuation when the valuation is negative.
  Rational residue() const;

  /// Returns this series with coefficient `c` added at exponent q. Throws IncompatibleRamification when q
  /// is not a multiple of 1/e.
  PuiseuxSeries with_term(const Rational& q, const Rational& c) const;
  /// The same series over ramification index e*m.
  PuiseuxSeries ramify(std::int64_t m) const;
  /// The same series over the smallest ramification index that represents it.
  PuiseuxSeries coarsen() const;
  /// Forgets every term at exponent >= tau.
  PuiseuxSeries truncate(const Rational& tau) const;
  /// Multiplication by t^q.
  PuiseuxSeries shift(const Rational& q) const;

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& x, const PuiseuxSeries& y);
  friend PuiseuxSeries operator-(const PuiseuxSeries& x, const PuiseuxSeries& y);
  friend PuiseuxSeries operator*(const PuiseuxSeries& x, const PuiseuxSeries& y);
  /// Exact quotient when both operands are exact and the division is exact in Q[t^(+-1/e)];
  /// otherwise a series truncated `relative_precision` units past the quotient's leading exponent.
  static PuiseuxSeries divide(const PuiseuxSeries& x, const PuiseuxSeries& y,
                              long relative_precision = kDefaultRelativePrecision);
  friend PuiseuxSeries operator/(const PuiseuxSeries& x, const PuiseuxSeries& y) { return divide(x, y); }
  PuiseuxSeries inverse(long relative_precision = kDefaultRelativePrecision) const;
  PuiseuxSeries pow(long n, long relative_precision = kDefaultRelativePrecision) const;
  PuiseuxSeries scaled(const Rational& c) const;

  PuiseuxSeries& operator+=(const PuiseuxSeries& y) { return *this = *this + y; }
  PuiseuxSeries& operator-=(const PuiseuxSeries& y) { return *this = *this - y; }
  PuiseuxSeries& operator*=(const PuiseuxSeries& y) { return *this = *this * y; }

  /// True when x - y has no known term below the smaller truncation order.
  bool agrees_with(const PuiseuxSeries& other) const;

  /// Human readable form, e.g. "2*t^(1/2) - t + O(t^3)".
  std::string to_string() const;
  /// Expression form without the O() tail; only valid for exact series.
  std::string to_expression() const;

 private:
  PuiseuxSeries(std::int64_t e, std::vector<Term> terms, std::optional<std::int64_t> precision);
  PuiseuxSeries over(std::int64_t e) const;
  static std::optional<PuiseuxSeries> exact_quotient(const PuiseuxSeries& x, const PuiseuxSeries& y);

  std::int64_t e_ = 1;
  std::vector<Term> terms_;
  std::optional<std::int64_t> precision_;
};

std::ostream& operator<<(std::ostream& os, const PuiseuxSeries& x);
std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// Polynomial in t with rational coefficients, ascending order.
using TPolynomial = std::vector<Rational>;

/// Laurent expansion of p/q at t = 0, truncated at the absolute order tau (exact when q is a monomial).
/// Throws ZeroDenominator when q is the zero polynomial and PrecisionExhausted when tau leaves no known term
/// of a nonzero quotient.
PuiseuxSeries from_rational_function(const TPolynomial& p, const TPolynomial& q, const Rational& tau);
/// Same, truncated `relative_precision` units past the leading exponent of the expansion.
PuiseuxSeries from_rational_function(const TPolynomial& p, const TPolynomial& q,
                                     long relative_precision = kDefaultRelativePrecision);

}  // namespace hybridrat
