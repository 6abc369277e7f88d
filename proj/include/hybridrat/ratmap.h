#pragma once

#include <string>
#include <vector>

#include "hybridrat/polynomial.h"
#include "hybridrat/series.h"

namespace hybridrat {

/// Numerator and denominator coefficients of a degree-d map, leading coefficient first:
/// f = (num[0] z^d + ... + num[d]) / (den[0] z^d + ... + den[d]).
struct CoefficientPair {
  std::vector<PuiseuxSeries> num;
  std::vector<PuiseuxSeries> den;

  int degree() const { return static_cast<int>(num.size()) - 1; }
};

/// Invertible 2x2 matrix [[alpha, beta], [gamma, delta]] over K acting by conjugation.
class ConjugationMatrix {
 public:
  /// Throws SingularMatrix when the determinant vanishes, or vanishes up to truncation.
  ConjugationMatrix(PuiseuxSeries alpha, PuiseuxSeries beta, PuiseuxSeries gamma, PuiseuxSeries delta);

  static ConjugationMatrix identity();
  /// diag(t^s, t^-s).
  static ConjugationMatrix diagonal(const Rational& s);

  const PuiseuxSeries& alpha() const { return alpha_; }
  const PuiseuxSeries& beta() const { return beta_; }
  const PuiseuxSeries& gamma() const { return gamma_; }
  const PuiseuxSeries& delta() const { return delta_; }
  const PuiseuxSeries& determinant() const { return det_; }

  ConjugationMatrix scaled(const PuiseuxSeries& lambda) const;
  friend ConjugationMatrix operator*(const ConjugationMatrix& a, const ConjugationMatrix& b);

  /// "[[a,b],[c,d]]" with each entry written as an expression in t.
  std::string to_expression() const;

 private:
  PuiseuxSeries alpha_, beta_, gamma_, delta_, det_;
};

/// Reduction of a normalized map to the residue field Q, common factors cancelled.
struct ResidueMap {
  int degree = 0;
  std::vector<Rational> num;  // leading coefficient first, size degree + 1
  std::vector<Rational> den;

  std::string to_string() const;
};

/// Rational map of degree d >= 1 over K, stored normalized so that the smallest coefficient valuation is 0.
class ValuedRationalMap {
 public:
  /// Normalizes and verifies a nonzero resultant. Throws AllZero, DegenerateMap (resultant exactly zero),
  /// PrecisionExhausted (resultant zero up to truncation), or std::invalid_argument when
  /// the coefficient vectors have different lengths or fewer than two entries.
  static ValuedRationalMap make(CoefficientPair coeffs);

  int degree() const { return coeffs_.degree(); }
  const CoefficientPair& coefficients() const { return coeffs_; }
  const std::vector<PuiseuxSeries>& num() const { return coeffs_.num; }
  const std::vector<PuiseuxSeries>& den() const { return coeffs_.den; }
  /// Resultant of the stored (normalized) coefficients.
  const PuiseuxSeries& resultant() const { return resultant_; }

  std::string to_string() const;

 private:
  ValuedRationalMap(CoefficientPair coeffs, PuiseuxSeries resultant)
      : coeffs_(std::move(coeffs)), resultant_(std::move(resultant)) {}

  CoefficientPair coeffs_;
  PuiseuxSeries resultant_;
};

/// Builds a map from a = (a_0..a_d), b = (b_0..b_d); throws std::invalid_argument unless both have d+1 entries.
ValuedRationalMap new_map(std::vector<PuiseuxSeries> a, std::vector<PuiseuxSeries> b, int d);

/// Resultant of the two degree-d binary forms (Sylvester determinant).
PuiseuxSeries resultant(const CoefficientPair& coeffs);
inline const PuiseuxSeries& resultant(const ValuedRationalMap& f) { return f.resultant(); }

/// Smallest valuation among the coefficients. Throws PrecisionExhausted if a truncated-to-zero coefficient could
/// be smaller, AllZero if every coefficient is exactly zero.
Rational min_coefficient_valuation(const CoefficientPair& coeffs);

/// v(Res) - 2d * min coefficient valuation; invariant under rescaling of the coefficients.
Rational ord_res(const CoefficientPair& coeffs);
Rational ord_res(const ValuedRationalMap& f);

/// Coefficients of f^M = M^-1 o f o M before any normalization.
CoefficientPair conjugate_coefficients(const CoefficientPair& f, const ConjugationMatrix& m);
ValuedRationalMap conjugate(const ValuedRationalMap& f, const ConjugationMatrix& m);

ResidueMap reduce(const ValuedRationalMap& f);
/// True when the reduced map still has degree d.
bool good_reduction(const ValuedRationalMap& f);
/// True when every monomial a^I b^J / Res of total degree 2d has nonnegative valuation.
bool in_beth(const CoefficientPair& coeffs);
inline bool in_beth(const ValuedRationalMap& f) { return in_beth(f.coefficients()); }

/// The l-fold composite f o ... o f, of degree d^l.
ValuedRationalMap iterate(const ValuedRationalMap& f, int l);

/// A point of P^1(K): a series, or infinity.
struct ProjectivePoint {
  bool infinity = false;
  PuiseuxSeries value;

  static ProjectivePoint at_infinity() { return {true, {}}; }
};

ProjectivePoint evaluate(const ValuedRationalMap& f, const ProjectivePoint& z);

/// Equality of maps: the coefficient vectors are proportional (all 2x2 minors vanish up to truncation).
bool same_map(const ValuedRationalMap& f, const ValuedRationalMap& g);

}  // namespace hybridrat
