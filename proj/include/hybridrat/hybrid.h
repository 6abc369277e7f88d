#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hybridrat/pgr_search.h"
#include "hybridrat/polynomial.h"
#include "hybridrat/ratmap.h"

namespace hybridrat {

/// Polynomial over Q in a fixed number of variables, stored as exponent vector -> coefficient.
class MvPolynomial {
 public:
  using Monomial = std::vector<int>;

  explicit MvPolynomial(std::size_t variables = 0) : n_(variables) {}
  static MvPolynomial constant(std::size_t variables, const Rational& c);
  static MvPolynomial variable(std::size_t variables, std::size_t index);

  std::size_t variables() const { return n_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long total_degree() const;

  friend MvPolynomial operator+(const MvPolynomial& a, const MvPolynomial& b);
  friend MvPolynomial operator-(const MvPolynomial& a, const MvPolynomial& b);
  friend MvPolynomial operator*(const MvPolynomial& a, const MvPolynomial& b);
  MvPolynomial operator-() const;
  MvPolynomial pow(unsigned n) const;
  friend bool operator==(const MvPolynomial& a, const MvPolynomial& b) = default;

  /// Evaluation at a point of any commutative ring built from Rational (Rational, PuiseuxSeries, ...).
  template <class T>
  T evaluate(const std::vector<T>& x) const {
    if (x.size() != n_) throw std::invalid_argument("wrong number of coordinates");
    T acc = T(Rational(0));
    for (const auto& [mono, c] : terms_) {
      T term = T(c);
      for (std::size_t i = 0; i < n_; ++i) {
        for (int k = 0; k < mono[i]; ++k) term = term * x[i];
      }
      acc = acc + term;
    }
    return acc;
  }

  /// Variables are named by `names` (default x0, x1, ...).
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::size_t n_;
  std::map<Monomial, Rational> terms_;
};

/// Resultant of two generic degree-d binary forms as a polynomial in a_0..a_d, b_0..b_d (variables in that order).
MvPolynomial resultant_polynomial(int d);

/// The point x of K^n seen through the seminorm P -> r^(alpha v_t(P(x))).
struct EvaluationSeminorm {
  std::vector<PuiseuxSeries> point;
  Rational base = Rational(1, 2);
  Rational alpha = 1;
};

/// base^exponent, or 0 when the exponent is +infinity.
struct SeminormValue {
  Rational base;
  std::optional<Rational> exponent;

  bool is_zero() const { return !exponent.has_value(); }
  double to_double() const;
  friend bool operator==(const SeminormValue& a, const SeminormValue& b) = default;
  /// Product of two values with the same base. Throws std::invalid_argument otherwise.
  friend SeminormValue operator*(const SeminormValue& a, const SeminormValue& b);
  SeminormValue pow(const Rational& k) const;
};

/// Throws PrecisionExhausted when P(x) is zero only up to truncation.
SeminormValue seminorm_eval(const MvPolynomial& p, const EvaluationSeminorm& sigma);
/// The flow x -> x^beta. Throws std::invalid_argument unless beta > 0.
EvaluationSeminorm flow(const EvaluationSeminorm& sigma, const Rational& beta);
/// Same point and base: the two seminorms lie on one flow trajectory.
bool same_trajectory(const EvaluationSeminorm& a, const EvaluationSeminorm& b);
bool operator==(const EvaluationSeminorm& a, const EvaluationSeminorm& b);

/// Rational function num(w) / den(w) in w = t^(1/e), over Q, kept in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_{Rational(1)} {}
  RationalFunction(const Rational& c);  // NOLINT(google-explicit-constructor)
  /// Throws ZeroDenominator when den is the zero polynomial.
  RationalFunction(QPolynomial num, QPolynomial den, std::int64_t e = 1);
  /// c * t^q.
  static RationalFunction monomial(const Rational& c, const Rational& q);

  const QPolynomial& num() const { return num_; }
  const QPolynomial& den() const { return den_; }
  std::int64_t ramification() const { return e_; }
  bool is_zero() const { return num_.empty(); }

  /// The same function over w' with w = w'^m.
  RationalFunction ramify(std::int64_t m) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws DivisionByZero for the zero function.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;
  RationalFunction pow(long n) const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  /// Exact t-adic valuation (+infinity for zero).
  Valuation valuation() const;
  /// Laurent-Puiseux expansion at t = 0, truncated at the absolute order tau; exact when possible.
  /// A nonzero function whose expansion starts at or beyond tau becomes O(t^tau).
  PuiseuxSeries expand(const Rational& tau) const;
  /// Value at t = t0 (requires e = 1). Throws SampleUndefined at a pole.
  Rational at(const Rational& t0) const;

 private:
  void normalize();

  QPolynomial num_;
  QPolynomial den_;
  std::int64_t e_ = 1;
};

/// A one-parameter family of degree-d maps with coefficients in Q(t), leading coefficient first.
struct FamilySpec {
  int degree = 1;
  std::vector<RationalFunction> num;
  std::vector<RationalFunction> den;
  std::optional<Rational> t0;

  /// Throws DegreeError for d < 1 and ArityError unless both lists have d + 1 entries.
  void validate() const;
  /// The member of the family at t = t0, as exact rational coefficient vectors (a_0..a_d, b_0..b_d).
  std::vector<Rational> sample(const Rational& t0) const;
};

/// True when the family's resultant, as an element of Q(t), is identically zero.
bool family_degenerate(const FamilySpec& f);

/// Entrywise expansion at absolute precision tau, normalized. Throws DegenerateMap for a degenerate family and
/// PrecisionExhausted when tau is too small to certify a nonzero resultant.
ValuedRationalMap family_limit(const FamilySpec& f, const Rational& tau);

struct AdaptiveLimit {
  ValuedRationalMap map;
  Rational precision;
};
/// family_limit, doubling tau up to `max_doublings` times on PrecisionExhausted.
AdaptiveLimit family_limit_adaptive(const FamilySpec& f, const Rational& tau, int max_doublings = 4);

enum class FamilyLabel { interior, boundary_pgr, boundary_no_pgr };
std::string to_string(FamilyLabel label);

struct FamilyClassification {
  FamilyLabel label;
  ValuedRationalMap limit;
  Rational ord_res;
  std::optional<PgrReport> pgr;
  Rational precision;
};

/// interior when the limit has good reduction, otherwise boundary split by the potential good reduction search.
/// Retries with doubled precision when the search runs out of it; throws Inconclusive when it stays undecided.
FamilyClassification classify_family(const FamilySpec& f, const Rational& tau = 32, const SearchConfig& config = {},
                                     int max_doublings = 4);

struct ConvergenceSample {
  long n;
  Rational epsilon;
  double measured_log;   // epsilon_n * log |P(x_n)|
  double predicted_log;  // v_t(P) * log t0
  double deviation;      // |exp(measured - predicted) - 1|
};

struct ConvergenceReport {
  Rational valuation;  // v_t(P(coefficients))
  Rational t0;
  std::vector<ConvergenceSample> samples;
  /// Samples n > 3N/4.
  std::size_t tail_start;
  double tail_deviation;
};

/// Samples f(t0^n) for n = 1..N exactly and compares |P(coefficients)|^(1/n) with t0^v. P has 2d + 2 variables
/// a_0..a_d, b_0..b_d. Throws std::invalid_argument unless 0 < t0 < 1 and N >= 5, SampleUndefined when a sample
/// hits a pole of a coefficient or a zero of P, and std::invalid_argument when P vanishes on the whole family.
ConvergenceReport verify_convergence(const FamilySpec& f, const MvPolynomial& p, const Rational& t0, long samples);

/// Matrix family [[alpha, beta], [gamma, delta]] with entries in Q(t^(1/e)).
struct MatrixFamily {
  RationalFunction alpha, beta, gamma, delta;

  static MatrixFamily identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }
};

struct ConjugatedLimit {
  /// Limit of the conjugated family f_t^(M_t).
  ValuedRationalMap map;
  /// Conjugate of the limit of f_t by the limit of M_t.
  ValuedRationalMap reference;
  bool commutes;
  /// The conjugated limit has good reduction: the sequence lands in the beth locus.
  bool beth_landing;
};

/// Throws SingularMatrix when det M is identically zero.
ConjugatedLimit conjugated_family_limit(const FamilySpec& f, const MatrixFamily& m, const Rational& tau = 32);

}  // namespace hybridrat
