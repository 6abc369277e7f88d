#pragma once

#include <cstddef>
#include <vector>

#include "hybridrat/rational.h"
#include "hybridrat/series.h"

namespace hybridrat {

/// Univariate polynomial over Q, ascending coefficients, no trailing zeros (the zero polynomial is empty).
using QPolynomial = std::vector<Rational>;

namespace qpoly {

QPolynomial trimmed(QPolynomial p);
/// -1 for the zero polynomial.
long degree(const QPolynomial& p);
QPolynomial add(const QPolynomial& a, const QPolynomial& b);
QPolynomial sub(const QPolynomial& a, const QPolynomial& b);
QPolynomial mul(const QPolynomial& a, const QPolynomial& b);
QPolynomial scale(const QPolynomial& a, const Rational& c);
/// Quotient and remainder of Euclidean division; b must be nonzero.
std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a, const QPolynomial& b);
/// Monic gcd (the zero polynomial when both inputs are zero).
QPolynomial gcd(QPolynomial a, QPolynomial b);
Rational evaluate(const QPolynomial& p, const Rational& x);

}  // namespace qpoly

/// Polynomial with Puiseux-series coefficients, ascending.
using SeriesPolynomial = std::vector<PuiseuxSeries>;

namespace spoly {

SeriesPolynomial mul(const SeriesPolynomial& a, const SeriesPolynomial& b);
SeriesPolynomial add(const SeriesPolynomial& a, const SeriesPolynomial& b);
SeriesPolynomial scale(const SeriesPolynomial& a, const PuiseuxSeries& c);
PuiseuxSeries evaluate(const SeriesPolynomial& p, const PuiseuxSeries& x);
/// Taylor coefficients at x: entry j is the coefficient of w^j in p(x + w).
SeriesPolynomial taylor_shift(const SeriesPolynomial& p, const PuiseuxSeries& x);

}  // namespace spoly

/// Sylvester matrix of two binary forms given by descending coefficient vectors (leading coefficient first).
/// Forms of degrees m and n produce an (m+n) x (m+n) matrix.
template <class T>
std::vector<std::vector<T>> sylvester_matrix(const std::vector<T>& a_desc, const std::vector<T>& b_desc) {
  const std::size_t m = a_desc.size() - 1;
  const std::size_t n = b_desc.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<T>> rows(size, std::vector<T>(size, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= m; ++k) rows[i][i + k] = a_desc[k];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k <= n; ++k) rows[n + i][i + k] = b_desc[k];
  }
  return rows;
}

/// Determinant over Q by Gaussian elimination.
Rational determinant(std::vector<std::vector<Rational>> m);

/// Determinant over the series field by fraction-free (Bareiss) elimination. Pivots are chosen with minimal
/// valuation; divisions by the previous pivot stay exact whenever the entries are exact.
/// Throws PrecisionExhausted when a pivot column is zero only up to truncation.
PuiseuxSeries determinant(std::vector<std::vector<PuiseuxSeries>> m);

}  // namespace hybridrat
