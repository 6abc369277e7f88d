#include "hybridrat/series.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hybridrat {

// ---------------------------------------------------------------------------
// Valuation

const Rational& Valuation::value() const {
  if (!value_) throw std::logic_error("valuation is +infinity");
  return *value_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  int c = cmp(*a.value_, *b.value_);
  return c <=> 0;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  return Valuation(*a.value_ + *b.value_);
}

std::string Valuation::to_string() const { return value_ ? hybridrat::to_string(*value_) : "+inf"; }

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

// ---------------------------------------------------------------------------
// PuiseuxSeries

namespace {

std::int64_t units_of(const Rational& q, std::int64_t e) {
  Rational scaled = q * e;
  if (scaled.get_den() != 1) throw IncompatibleRamification("exponent " + q.get_str() + " is not a multiple of 1/" +
                                                            std::to_string(e));
  return to_int64(scaled.get_num());
}

std::optional<std::int64_t> min_precision(const std::optional<std::int64_t>& a, const std::optional<std::int64_t>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

PuiseuxSeries::PuiseuxSeries(std::int64_t e, std::vector<Term> terms, std::optional<std::int64_t> precision)
    : e_(e), terms_(std::move(terms)), precision_(precision) {}

PuiseuxSeries::PuiseuxSeries(const Rational& c) {
  if (c != 0) terms_.push_back({0, c});
}

PuiseuxSeries PuiseuxSeries::monomial(const Rational& coeff, const Rational& exponent) {
  const std::int64_t e = denominator_of(exponent);
  return from_terms(e, {{units_of(exponent, e), coeff}});
}

PuiseuxSeries PuiseuxSeries::unknown(const Rational& tau) {
  const std::int64_t e = denominator_of(tau);
  return PuiseuxSeries(e, {}, units_of(tau, e));
}

PuiseuxSeries PuiseuxSeries::from_terms(std::int64_t e, std::vector<Term> terms,
                                        std::optional<std::int64_t> precision) {
  if (e < 1) throw std::invalid_argument("ramification index must be positive");
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& term : terms) {
    if (precision && term.exponent >= *precision) break;
    if (!merged.empty() && merged.back().exponent == term.exponent) {
      merged.back().coeff += term.coeff;
    } else {
      merged.push_back(std::move(term));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  return PuiseuxSeries(e, std::move(merged), precision);
}

std::optional<Rational> PuiseuxSeries::precision() const {
  if (!precision_) return std::nullopt;
  return make_rational(*precision_, e_);
}

Valuation PuiseuxSeries::valuation() const {
  if (terms_.empty()) return Valuation::infinity();
  return Valuation(make_rational(terms_.front().exponent, e_));
}

Valuation PuiseuxSeries::valuation_lower_bound() const {
  if (!terms_.empty() || !precision_) return valuation();
  return Valuation(*precision());
}

Rational PuiseuxSeries::coefficient(const Rational& q) const {
  if (precision_ && q >= *precision()) {
    throw PrecisionExhausted("coefficient of t^" + q.get_str() + " lies past truncation order " +
                             precision()->get_str());
  }
  Rational scaled = q * e_;
  if (scaled.get_den() != 1) return 0;
  const std::int64_t k = to_int64(scaled.get_num());
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, std::int64_t v) { return t.exponent < v; });
  if (it != terms_.end() && it->exponent == k) return it->coeff;
  return 0;
}

const Rational& PuiseuxSeries::leading_coefficient() const {
  if (terms_.empty()) {
    if (precision_) throw PrecisionExhausted("series is zero up to its truncation order");
    throw std::logic_error("leading coefficient of the zero series");
  }
  return terms_.front().coeff;
}

Rational PuiseuxSeries::residue() const {
  if (!terms_.empty() && terms_.front().exponent < 0) {
    throw NegativeValuation("residue of a series with valuation " + valuation().to_string());
  }
  return coefficient(0);
}

PuiseuxSeries PuiseuxSeries::with_term(const Rational& q, const Rational& c) const {
  const std::int64_t k = units_of(q, e_);
  std::vector<Term> terms = terms_;
  terms.push_back({k, c});
  return from_terms(e_, std::move(terms), precision_);
}

PuiseuxSeries PuiseuxSeries::over(std::int64_t e) const {
  if (e == e_) return *this;
  if (e % e_ != 0) throw std::logic_error("ramification index must be a multiple of the current one");
  return ramify(e / e_);
}

PuiseuxSeries PuiseuxSeries::ramify(std::int64_t m) const {
  if (m < 1) throw std::invalid_argument("ramification factor must be positive");
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.exponent *= m;
  std::optional<std::int64_t> precision;
  if (precision_) precision = *precision_ * m;
  return PuiseuxSeries(e_ * m, std::move(terms), precision);
}

PuiseuxSeries PuiseuxSeries::coarsen() const {
  std::int64_t g = e_;
  for (const auto& t : terms_) g = std::gcd(g, t.exponent);
  if (precision_) g = std::gcd(g, *precision_);
  if (g <= 1) return *this;
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.exponent /= g;
  std::optional<std::int64_t> precision;
  if (precision_) precision = *precision_ / g;
  return PuiseuxSeries(e_ / g, std::move(terms), precision);
}

PuiseuxSeries PuiseuxSeries::truncate(const Rational& tau) const {
  const std::int64_t k = to_int64(ceil(tau * e_));
  return from_terms(e_, terms_, min_precision(precision_, k));
}

PuiseuxSeries PuiseuxSeries::shift(const Rational& q) const {
  const std::int64_t e = lcm64(e_, denominator_of(q));
  PuiseuxSeries x = over(e);
  const std::int64_t k = units_of(q, e);
  for (auto& t : x.terms_) t.exponent += k;
  if (x.precision_) *x.precision_ += k;
  return x;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries x = *this;
  for (auto& t : x.terms_) t.coeff = -t.coeff;
  return x;
}

PuiseuxSeries PuiseuxSeries::scaled(const Rational& c) const {
  if (c == 0) {
    if (precision_) return PuiseuxSeries(e_, {}, std::nullopt);
    return PuiseuxSeries();
  }
  PuiseuxSeries x = *this;
  for (auto& t : x.terms_) t.coeff *= c;
  return x;
}

PuiseuxSeries operator+(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  const std::int64_t e = lcm64(x.e_, y.e_);
  PuiseuxSeries a = x.over(e);
  PuiseuxSeries b = y.over(e);
  std::vector<Term> terms = std::move(a.terms_);
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return PuiseuxSeries::from_terms(e, std::move(terms), min_precision(a.precision_, b.precision_));
}

PuiseuxSeries operator-(const PuiseuxSeries& x, const PuiseuxSeries& y) { return x + (-y); }

PuiseuxSeries operator*(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  if (x.is_zero() || y.is_zero()) return PuiseuxSeries();
  const std::int64_t e = lcm64(x.e_, y.e_);
  PuiseuxSeries a = x.over(e);
  PuiseuxSeries b = y.over(e);
  // Lower bounds for the valuations, in units of 1/e; both exist since neither factor is the exact zero.
  auto low = [](const PuiseuxSeries& s) { return s.terms_.empty() ? *s.precision_ : s.terms_.front().exponent; };
  std::optional<std::int64_t> precision;
  if (a.precision_) precision = *a.precision_ + low(b);
  if (b.precision_) precision = min_precision(precision, *b.precision_ + low(a));

  std::map<std::int64_t, Rational> acc;
  for (const auto& s : a.terms_) {
    for (const auto& u : b.terms_) {
      const std::int64_t k = s.exponent + u.exponent;
      if (precision && k >= *precision) break;
      acc[k] += s.coeff * u.coeff;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [k, c] : acc) {
    if (c != 0) terms.push_back({k, std::move(c)});
  }
  return PuiseuxSeries(e, std::move(terms), precision);
}

PuiseuxSeries PuiseuxSeries::inverse(long relative_precision) const {
  if (is_zero()) throw DivisionByZero("inverse of the zero series");
  if (is_unknown_zero()) throw PrecisionExhausted("inverse of a series that is zero up to O(t^" +
                                                  precision()->get_str() + ")");
  const std::int64_t k0 = terms_.front().exponent;
  const Rational inv_lead = 1 / terms_.front().coeff;
  if (terms_.size() == 1 && !precision_) return PuiseuxSeries(e_, {{-k0, inv_lead}}, std::nullopt);

  std::int64_t n = relative_precision * e_;
  if (precision_) n = std::min(n, *precision_ - k0);
  // q_m = -(1/c) sum_{j>0} y_j q_{m-j}, with exponents relative to the leading term.
  std::vector<Rational> q(static_cast<std::size_t>(n));
  q[0] = inv_lead;
  for (std::int64_t m = 1; m < n; ++m) {
    Rational sum = 0;
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      const std::int64_t j = terms_[i].exponent - k0;
      if (j > m) break;
      const auto& prev = q[static_cast<std::size_t>(m - j)];
      if (prev != 0) sum += terms_[i].coeff * prev;
    }
    q[static_cast<std::size_t>(m)] = -inv_lead * sum;
  }
  std::vector<Term> terms;
  for (std::int64_t m = 0; m < n; ++m) {
    auto& c = q[static_cast<std::size_t>(m)];
    if (c != 0) terms.push_back({m - k0, std::move(c)});
  }
  return PuiseuxSeries(e_, std::move(terms), n - k0);
}

std::optional<PuiseuxSeries> PuiseuxSeries::exact_quotient(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  const std::int64_t e = lcm64(x.e_, y.e_);
  PuiseuxSeries a = x.over(e);
  PuiseuxSeries b = y.over(e);
  const std::int64_t lo = a.terms_.front().exponent - b.terms_.front().exponent;
  const std::int64_t hi = a.terms_.back().exponent - b.terms_.back().exponent;
  if (hi < lo) return std::nullopt;
  std::map<std::int64_t, Rational> rem;
  for (const auto& t : a.terms_) rem.emplace(t.exponent, t.coeff);
  const std::int64_t b0 = b.terms_.front().exponent;
  const Rational inv_lead = 1 / b.terms_.front().coeff;
  std::vector<Term> quotient;
  for (std::int64_t m = lo; m <= hi; ++m) {
    auto it = rem.find(m + b0);
    if (it == rem.end()) continue;
    Rational c = it->second * inv_lead;
    for (const auto& t : b.terms_) {
      auto& slot = rem[t.exponent + m];
      slot -= c * t.coeff;
      if (slot == 0) rem.erase(t.exponent + m);
    }
    quotient.push_back({m, std::move(c)});
  }
  if (!rem.empty()) return std::nullopt;
  return PuiseuxSeries(e, std::move(quotient), std::nullopt);
}

PuiseuxSeries PuiseuxSeries::divide(const PuiseuxSeries& x, const PuiseuxSeries& y, long relative_precision) {
  if (y.is_zero()) throw DivisionByZero("division by the zero series");
  if (y.is_unknown_zero()) {
    throw PrecisionExhausted("division by a series that is zero up to O(t^" + y.precision()->get_str() + ")");
  }
  if (x.is_zero()) return PuiseuxSeries();
  if (x.is_exact() && y.is_exact()) {
    if (auto q = exact_quotient(x, y)) return *q;
  }
  return x * y.inverse(relative_precision);
}

PuiseuxSeries PuiseuxSeries::pow(long n, long relative_precision) const {
  if (n < 0) return inverse(relative_precision).pow(-n, relative_precision);
  PuiseuxSeries result(1);
  PuiseuxSeries base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

bool PuiseuxSeries::agrees_with(const PuiseuxSeries& other) const { return !(*this - other).has_known_terms(); }

namespace {

std::string exponent_text(const Rational& q) {
  if (q == 1) return "t";
  if (q.get_den() == 1 && q > 0) return "t^" + q.get_str();
  return "t^(" + q.get_str() + ")";
}

}  // namespace

std::string PuiseuxSeries::to_expression() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms_) {
    const Rational q = make_rational(term.exponent, e_);
    Rational c = term.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    if (q == 0) {
      os << c.get_str();
    } else if (c == 1) {
      os << exponent_text(q);
    } else {
      os << c.get_str() << "*" << exponent_text(q);
    }
  }
  return os.str();
}

std::string PuiseuxSeries::to_string() const {
  if (!precision_) return to_expression();
  std::string tail = "O(" + exponent_text(*precision()) + ")";
  if (terms_.empty()) return tail;
  return to_expression() + " + " + tail;
}

std::ostream& operator<<(std::ostream& os, const PuiseuxSeries& x) { return os << x.to_string(); }

// ---------------------------------------------------------------------------
// Rational functions of t

namespace {

PuiseuxSeries polynomial_series(const TPolynomial& p) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < p.size(); ++i) terms.push_back({static_cast<std::int64_t>(i), p[i]});
  return PuiseuxSeries::from_terms(1, std::move(terms));
}

}  // namespace

PuiseuxSeries from_rational_function(const TPolynomial& p, const TPolynomial& q, const Rational& tau) {
  PuiseuxSeries num = polynomial_series(p);
  PuiseuxSeries den = polynomial_series(q);
  if (den.is_zero()) throw ZeroDenominator("denominator polynomial is identically zero");
  if (num.is_zero()) return num;
  const Rational lead = num.valuation().value() - den.valuation().value();
  if (auto exact = PuiseuxSeries::divide(num, den, 1); exact.is_exact()) return exact;
  if (tau <= lead) {
    throw PrecisionExhausted("truncation order " + tau.get_str() + " leaves no known term of an expansion starting at t^" +
                             lead.get_str());
  }
  const long relative = to_int64(ceil(tau - lead));
  return PuiseuxSeries::divide(num, den, relative).truncate(tau);
}

PuiseuxSeries from_rational_function(const TPolynomial& p, const TPolynomial& q, long relative_precision) {
  PuiseuxSeries num = polynomial_series(p);
  PuiseuxSeries den = polynomial_series(q);
  if (den.is_zero()) throw ZeroDenominator("denominator polynomial is identically zero");
  return PuiseuxSeries::divide(num, den, relative_precision);
}

}  // namespace hybridrat
