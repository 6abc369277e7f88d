#pragma once

#include <random>
#include <vector>

#include "hybridrat/hybrid.h"

namespace testing {

using namespace hybridrat;

inline PuiseuxSeries t_pow(const Rational& q) { return PuiseuxSeries::monomial(1, q); }

// Sum of up to `terms` monomials c t^(k/e) with small integer c, exponents in [lo, hi].
inline PuiseuxSeries random_series(std::mt19937_64& rng, int lo, int hi, std::int64_t e = 1, int terms = 2,
                                   int zero_odds = 5) {
  std::uniform_int_distribution<int> coeff(-3, 3), exponent(lo * static_cast<int>(e), hi * static_cast<int>(e)),
      zero(0, zero_odds);
  if (zero_odds > 0 && zero(rng) == 0) return PuiseuxSeries();
  std::vector<Term> out;
  for (int i = 0; i < terms; ++i) out.push_back({exponent(rng), Rational(coeff(rng))});
  return PuiseuxSeries::from_terms(e, out);
}

// A random map of degree d with coefficient valuations in [lo, hi]; degenerate draws are retried.
inline ValuedRationalMap random_map(std::mt19937_64& rng, int d, int lo = -3, int hi = 3, std::int64_t e = 1) {
  for (;;) {
    std::vector<PuiseuxSeries> a, b;
    for (int i = 0; i <= d; ++i) {
      a.push_back(random_series(rng, lo, hi, e));
      b.push_back(random_series(rng, lo, hi, e));
    }
    try {
      return new_map(a, b, d);
    } catch (const Error&) {
    }
  }
}

inline Rational random_rational(std::mt19937_64& rng, int lo, int hi, int max_den = 4) {
  std::uniform_int_distribution<int> num(lo * max_den, hi * max_den), den(1, max_den);
  return make_rational(num(rng), 1) / den(rng);
}

// Random invertible matrix with monomial-ish entries.
inline ConjugationMatrix random_matrix(std::mt19937_64& rng) {
  for (;;) {
    try {
      return ConjugationMatrix(random_series(rng, -2, 2, 1, 2, 3), random_series(rng, -2, 2, 1, 2, 3),
                               random_series(rng, -2, 2, 1, 2, 3), random_series(rng, -2, 2, 1, 2, 3));
    } catch (const SingularMatrix&) {
    }
  }
}

inline RationalFunction random_rational_function(std::mt19937_64& rng, int max_degree = 2) {
  std::uniform_int_distribution<int> coeff(-3, 3), degree(0, max_degree), zero(0, 4);
  if (zero(rng) == 0) return RationalFunction(0);
  for (;;) {
    QPolynomial num, den;
    for (int i = degree(rng); i >= 0; --i) num.push_back(coeff(rng));
    for (int i = degree(rng); i >= 0; --i) den.push_back(coeff(rng));
    if (qpoly::trimmed(den).empty()) continue;
    // Shift by a random power of t.
    std::uniform_int_distribution<int> shift(-2, 2);
    return RationalFunction(num, den) * RationalFunction::monomial(1, shift(rng));
  }
}

inline FamilySpec random_family(std::mt19937_64& rng, int d) {
  for (;;) {
    FamilySpec f;
    f.degree = d;
    for (int i = 0; i <= d; ++i) {
      f.num.push_back(random_rational_function(rng));
      f.den.push_back(random_rational_function(rng));
    }
    if (!family_degenerate(f)) return f;
  }
}

}  // namespace testing
