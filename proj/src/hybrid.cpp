#include "hybridrat/hybrid.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace hybridrat {

// ---------------------------------------------------------------------------
// MvPolynomial

MvPolynomial MvPolynomial::constant(std::size_t variables, const Rational& c) {
  MvPolynomial p(variables);
  p.add_term(Monomial(variables, 0), c);
  return p;
}

MvPolynomial MvPolynomial::variable(std::size_t variables, std::size_t index) {
  if (index >= variables) throw std::out_of_range("variable index out of range");
  MvPolynomial p(variables);
  Monomial m(variables, 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

void MvPolynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

long MvPolynomial::total_degree() const {
  long best = -1;
  for (const auto& [m, c] : terms_) best = std::max<long>(best, std::accumulate(m.begin(), m.end(), 0L));
  return best;
}

namespace {

void check_same(const MvPolynomial& a, const MvPolynomial& b) {
  if (a.variables() != b.variables()) throw std::invalid_argument("polynomials over different variable sets");
}

}  // namespace

MvPolynomial operator+(const MvPolynomial& a, const MvPolynomial& b) {
  check_same(a, b);
  MvPolynomial r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

MvPolynomial MvPolynomial::operator-() const {
  MvPolynomial r(n_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MvPolynomial operator-(const MvPolynomial& a, const MvPolynomial& b) { return a + (-b); }

MvPolynomial operator*(const MvPolynomial& a, const MvPolynomial& b) {
  check_same(a, b);
  MvPolynomial r(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      MvPolynomial::Monomial m(a.n_);
      for (std::size_t i = 0; i < a.n_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

MvPolynomial MvPolynomial::pow(unsigned n) const {
  MvPolynomial r = constant(n_, 1);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

std::string MvPolynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](std::size_t i) { return i < names.size() ? names[i] : "x" + std::to_string(i); };
  std::string out;
  // Highest total degree first, then reverse lexicographic, for a stable and readable order.
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    long dx = std::accumulate(x.first.begin(), x.first.end(), 0L);
    long dy = std::accumulate(y.first.begin(), y.first.end(), 0L);
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  for (const auto& [m, c] : ordered) {
    std::string factors;
    for (std::size_t i = 0; i < n_; ++i) {
      if (m[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += name(i);
      if (m[i] > 1) factors += "^" + std::to_string(m[i]);
    }
    Rational mag = abs(c);
    std::string body;
    if (factors.empty()) {
      body = hybridrat::to_string(mag);
    } else if (mag == 1) {
      body = factors;
    } else {
      body = hybridrat::to_string(mag) + "*" + factors;
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + body;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

MvPolynomial resultant_polynomial(int d) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  const std::size_t vars = 2 * static_cast<std::size_t>(d) + 2;
  const int n = 2 * d;
  // Sylvester matrix of variable indices: rows 0..d-1 shift a, rows d..2d-1 shift b; -1 is a zero entry.
  std::vector<std::vector<int>> index(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k <= d; ++k) {
      index[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = k;
      index[static_cast<std::size_t>(d + i)][static_cast<std::size_t>(i + k)] = d + 1 + k;
    }
  }
  // Laplace expansion along rows, memoized on the set of used columns.
  std::map<unsigned, MvPolynomial> memo;
  std::function<MvPolynomial(int, unsigned)> minor = [&](int row, unsigned used) -> MvPolynomial {
    if (row == n) return MvPolynomial::constant(vars, 1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    MvPolynomial acc(vars);
    int position = 0;
    for (int col = 0; col < n; ++col) {
      if (used & (1u << col)) continue;
      const int v = index[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      if (v >= 0) {
        MvPolynomial term = MvPolynomial::variable(vars, static_cast<std::size_t>(v)) * minor(row + 1, used | (1u << col));
        acc = position % 2 == 0 ? acc + term : acc - term;
      }
      ++position;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return minor(0, 0);
}

// ---------------------------------------------------------------------------
// Seminorms

double SeminormValue::to_double() const {
  if (is_zero()) return 0.0;
  return std::exp(exponent->get_d() * log_abs(base));
}

SeminormValue operator*(const SeminormValue& a, const SeminormValue& b) {
  if (a.base != b.base) throw std::invalid_argument("seminorm values with different bases");
  if (a.is_zero() || b.is_zero()) return {a.base, std::nullopt};
  return {a.base, *a.exponent + *b.exponent};
}

SeminormValue SeminormValue::pow(const Rational& k) const {
  if (k <= 0) throw std::invalid_argument("power must be positive");
  if (is_zero()) return *this;
  return {base, *exponent * k};
}

namespace {

void check_seminorm(const EvaluationSeminorm& s) {
  if (s.base <= 0 || s.base >= 1) throw std::invalid_argument("base scale must lie in (0, 1)");
  if (s.alpha <= 0) throw std::invalid_argument("flow exponent must be positive");
}

}  // namespace

SeminormValue seminorm_eval(const MvPolynomial& p, const EvaluationSeminorm& sigma) {
  check_seminorm(sigma);
  const PuiseuxSeries value = p.evaluate(sigma.point);
  if (value.is_zero()) return {sigma.base, std::nullopt};
  if (value.is_unknown_zero()) {
    throw PrecisionExhausted("P(x) vanishes up to O(t^" + value.precision()->get_str() + ")");
  }
  return {sigma.base, sigma.alpha * value.valuation().value()};
}

EvaluationSeminorm flow(const EvaluationSeminorm& sigma, const Rational& beta) {
  if (beta <= 0) throw std::invalid_argument("flow parameter must be positive");
  check_seminorm(sigma);
  EvaluationSeminorm out = sigma;
  out.alpha *= beta;
  return out;
}

bool same_trajectory(const EvaluationSeminorm& a, const EvaluationSeminorm& b) {
  if (a.base != b.base || a.point.size() != b.point.size()) return false;
  for (std::size_t i = 0; i < a.point.size(); ++i) {
    if (!a.point[i].agrees_with(b.point[i])) return false;
  }
  return true;
}

bool operator==(const EvaluationSeminorm& a, const EvaluationSeminorm& b) {
  return same_trajectory(a, b) && a.alpha == b.alpha;
}

// ---------------------------------------------------------------------------
// Rational functions of t^(1/e)

RationalFunction::RationalFunction(const Rational& c) : num_{c}, den_{Rational(1)} { normalize(); }

RationalFunction::RationalFunction(QPolynomial num, QPolynomial den, std::int64_t e)
    : num_(std::move(num)), den_(std::move(den)), e_(e) {
  if (e_ < 1) throw std::invalid_argument("ramification index must be positive");
  normalize();
}

void RationalFunction::normalize() {
  num_ = qpoly::trimmed(std::move(num_));
  den_ = qpoly::trimmed(std::move(den_));
  if (den_.empty()) throw ZeroDenominator("denominator is identically zero");
  if (num_.empty()) {
    den_ = {Rational(1)};
    return;
  }
  QPolynomial g = qpoly::gcd(num_, den_);
  if (g.size() > 1) {
    num_ = qpoly::divmod(num_, g).first;
    den_ = qpoly::divmod(den_, g).first;
  }
  const Rational lead = den_.back();
  if (lead != 1) {
    num_ = qpoly::scale(num_, 1 / lead);
    den_ = qpoly::scale(den_, 1 / lead);
  }
}

RationalFunction RationalFunction::monomial(const Rational& c, const Rational& q) {
  const std::int64_t e = denominator_of(q);
  const std::int64_t k = to_int64(q.get_num());
  QPolynomial power(static_cast<std::size_t>(std::abs(k)) + 1);
  power.back() = 1;
  if (k >= 0) return RationalFunction(qpoly::scale(power, c), {Rational(1)}, e);
  return RationalFunction({c}, power, e);
}

namespace {

QPolynomial spread(const QPolynomial& p, std::int64_t m) {
  if (p.empty() || m == 1) return p;
  QPolynomial out((p.size() - 1) * static_cast<std::size_t>(m) + 1);
  for (std::size_t i = 0; i < p.size(); ++i) out[i * static_cast<std::size_t>(m)] = p[i];
  return out;
}

long order_at_zero(const QPolynomial& p) {
  long k = 0;
  while (p[static_cast<std::size_t>(k)] == 0) ++k;
  return k;
}

std::pair<RationalFunction, RationalFunction> common(const RationalFunction& a, const RationalFunction& b) {
  const std::int64_t e = lcm64(a.ramification(), b.ramification());
  return {a.ramify(e / a.ramification()), b.ramify(e / b.ramification())};
}

}  // namespace

RationalFunction RationalFunction::ramify(std::int64_t m) const {
  if (m < 1) throw std::invalid_argument("ramification factor must be positive");
  if (m == 1) return *this;
  return RationalFunction(spread(num_, m), spread(den_, m), e_ * m);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  auto [x, y] = common(a, b);
  return RationalFunction(qpoly::add(qpoly::mul(x.num_, y.den_), qpoly::mul(y.num_, x.den_)),
                          qpoly::mul(x.den_, y.den_), x.e_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = qpoly::scale(num_, -1);
  return r;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  auto [x, y] = common(a, b);
  return RationalFunction(qpoly::mul(x.num_, y.num_), qpoly::mul(x.den_, y.den_), x.e_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero function");
  auto [x, y] = common(a, b);
  return RationalFunction(qpoly::mul(x.num_, y.den_), qpoly::mul(x.den_, y.num_), x.e_);
}

RationalFunction RationalFunction::pow(long n) const {
  if (n < 0) return RationalFunction(1) / pow(-n);
  RationalFunction r(1);
  for (long i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  auto [x, y] = common(a, b);
  return x.num_ == y.num_ && x.den_ == y.den_;
}

Valuation RationalFunction::valuation() const {
  if (is_zero()) return Valuation::infinity();
  return Valuation(make_rational(order_at_zero(num_) - order_at_zero(den_), e_));
}

PuiseuxSeries RationalFunction::expand(const Rational& tau) const {
  if (is_zero()) return PuiseuxSeries();
  // Expand in w = t^(1/e), then relabel exponents k -> k/e.
  const Rational tau_w = tau * e_;
  PuiseuxSeries w;
  try {
    w = from_rational_function(num_, den_, Rational(ceil(tau_w)));
  } catch (const PrecisionExhausted&) {
    return PuiseuxSeries::unknown(tau);
  }
  if (e_ == 1) return w;
  std::optional<std::int64_t> precision;
  if (w.precision_units()) precision = *w.precision_units();
  return PuiseuxSeries::from_terms(w.ramification() * e_, w.terms(), precision);
}

Rational RationalFunction::at(const Rational& t0) const {
  if (e_ != 1) throw std::invalid_argument("sampling needs integer exponents of t");
  const Rational d = qpoly::evaluate(den_, t0);
  if (d == 0) throw SampleUndefined("t = " + to_string(t0) + " is a pole");
  return qpoly::evaluate(num_, t0) / d;
}

// ---------------------------------------------------------------------------
// Families

void FamilySpec::validate() const {
  if (degree < 1) throw DegreeError("degree must be at least 1, got " + std::to_string(degree));
  const std::size_t n = static_cast<std::size_t>(degree) + 1;
  if (num.size() != n || den.size() != n) {
    throw ArityError("degree " + std::to_string(degree) + " needs " + std::to_string(n) +
                     " numerator and denominator coefficients, got " + std::to_string(num.size()) + " and " +
                     std::to_string(den.size()));
  }
}

std::vector<Rational> FamilySpec::sample(const Rational& t) const {
  validate();
  std::vector<Rational> out;
  for (const auto* list : {&num, &den}) {
    for (const auto& c : *list) out.push_back(c.at(t));
  }
  return out;
}

namespace {

std::vector<RationalFunction> entries_over_common_ramification(const FamilySpec& f) {
  std::int64_t e = 1;
  for (const auto* list : {&f.num, &f.den}) {
    for (const auto& c : *list) e = lcm64(e, c.ramification());
  }
  std::vector<RationalFunction> out;
  for (const auto* list : {&f.num, &f.den}) {
    for (const auto& c : *list) out.push_back(c.ramify(e / c.ramification()));
  }
  return out;
}

Rational sample_resultant(const std::vector<Rational>& c, int d) {
  const auto mid = c.begin() + d + 1;
  return determinant(sylvester_matrix(std::vector<Rational>(c.begin(), mid), std::vector<Rational>(mid, c.end())));
}

}  // namespace

bool family_degenerate(const FamilySpec& f) {
  f.validate();
  // Entries become functions of w = t^(1/e); the resultant, cleared of denominators, is a polynomial in w of
  // bounded degree, so it is identically zero iff it vanishes at more points than that bound.
  std::vector<RationalFunction> entries = entries_over_common_ramification(f);
  long bound = 1;
  for (const auto& c : entries) {
    bound += f.degree * (static_cast<long>(c.num().size()) + static_cast<long>(c.den().size()));
  }
  long zeros = 0;
  for (long k = 1; zeros <= bound; ++k) {
    std::vector<Rational> values;
    try {
      for (const auto& c : entries) values.push_back(RationalFunction(c.num(), c.den()).at(k));
    } catch (const SampleUndefined&) {
      continue;
    }
    if (sample_resultant(values, f.degree) != 0) return false;
    ++zeros;
  }
  return true;
}

ValuedRationalMap family_limit(const FamilySpec& f, const Rational& tau) {
  f.validate();
  if (family_degenerate(f)) throw DegenerateMap("the family's resultant vanishes identically in t");
  CoefficientPair pair;
  for (const auto& c : f.num) pair.num.push_back(c.expand(tau));
  for (const auto& c : f.den) pair.den.push_back(c.expand(tau));
  return ValuedRationalMap::make(std::move(pair));
}

AdaptiveLimit family_limit_adaptive(const FamilySpec& f, const Rational& tau, int max_doublings) {
  Rational current = tau;
  for (int attempt = 0;; ++attempt) {
    try {
      return {family_limit(f, current), current};
    } catch (const PrecisionExhausted&) {
      if (attempt >= max_doublings) throw;
      current *= 2;
    }
  }
}

std::string to_string(FamilyLabel label) {
  switch (label) {
    case FamilyLabel::interior:
      return "interior";
    case FamilyLabel::boundary_pgr:
      return "boundary_pgr";
    case FamilyLabel::boundary_no_pgr:
      return "boundary_no_pgr";
  }
  return "interior";
}

FamilyClassification classify_family(const FamilySpec& f, const Rational& tau, const SearchConfig& config,
                                     int max_doublings) {
  Rational current = tau;
  for (int attempt = 0;; ++attempt) {
    AdaptiveLimit limit = family_limit_adaptive(f, current, max_doublings);
    Rational ord = ord_res(limit.map);
    if (ord == 0) return {FamilyLabel::interior, limit.map, ord, std::nullopt, limit.precision};
    PgrReport report = minimize_ord_res(limit.map, config);
    switch (report.verdict) {
      case Verdict::pgr:
        return {FamilyLabel::boundary_pgr, limit.map, ord, report, limit.precision};
      case Verdict::no_pgr:
        return {FamilyLabel::boundary_no_pgr, limit.map, ord, report, limit.precision};
      case Verdict::inconclusive:
        break;
    }
    if (!report.precision_limited || attempt >= max_doublings) throw Inconclusive(std::move(report));
    current = limit.precision * 2;
  }
}

// ---------------------------------------------------------------------------
// Numeric convergence

namespace {

Rational rational_pow(const Rational& x, long n) {
  Rational r = 1;
  Rational b = n >= 0 ? x : 1 / x;
  for (long k = std::labs(n); k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace

ConvergenceReport verify_convergence(const FamilySpec& f, const MvPolynomial& p, const Rational& t0, long samples) {
  f.validate();
  if (t0 <= 0 || t0 >= 1) throw std::invalid_argument("t0 must lie in (0, 1)");
  if (samples < 5) throw std::invalid_argument("at least 5 samples are needed");
  if (p.variables() != 2 * static_cast<std::size_t>(f.degree) + 2) {
    throw std::invalid_argument("observable must use the 2d + 2 coefficient variables");
  }
  std::vector<RationalFunction> entries;
  for (const auto* list : {&f.num, &f.den}) entries.insert(entries.end(), list->begin(), list->end());

  ConvergenceReport report;
  report.t0 = t0;
  const RationalFunction symbolic = p.evaluate(entries);
  if (symbolic.is_zero()) throw std::invalid_argument("observable vanishes identically on the family");
  if (symbolic.ramification() != 1) throw std::invalid_argument("sampling needs integer exponents of t");
  const Rational v = symbolic.valuation().value();
  report.valuation = v;
  const double log_t0 = log_abs(t0);

  for (long n = 1; n <= samples; ++n) {
    const Rational tn = rational_pow(t0, n);
    const Rational value = p.evaluate(f.sample(tn));
    if (value == 0) throw SampleUndefined("sample " + std::to_string(n) + " is a zero of the observable");
    ConvergenceSample s;
    s.n = n;
    s.epsilon = make_rational(1, n);
    s.measured_log = log_abs(value) / static_cast<double>(n);
    s.predicted_log = v.get_d() * log_t0;
    const Rational exponent = v * n;
    if (exponent.get_den() == 1 && abs(value) == rational_pow(t0, to_int64(exponent.get_num()))) {
      s.deviation = 0.0;
    } else {
      s.deviation = std::fabs(std::expm1(s.measured_log - s.predicted_log));
    }
    report.samples.push_back(s);
  }
  report.tail_start = static_cast<std::size_t>(3 * samples / 4);
  report.tail_deviation = 0.0;
  for (std::size_t i = report.tail_start; i < report.samples.size(); ++i) {
    report.tail_deviation = std::max(report.tail_deviation, report.samples[i].deviation);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Conjugated families

namespace {

using RfPolynomial = std::vector<RationalFunction>;

RfPolynomial rf_mul(const RfPolynomial& a, const RfPolynomial& b) {
  RfPolynomial r(a.size() + b.size() - 1, RationalFunction(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

// Coefficients (leading first) of sum_k c_k X^(d-k) Y^k with X = alpha z + beta, Y = gamma z + delta.
std::vector<RationalFunction> substitute(const std::vector<RationalFunction>& c, const MatrixFamily& m) {
  const std::size_t d = c.size() - 1;
  const RfPolynomial x{m.beta, m.alpha};
  const RfPolynomial y{m.delta, m.gamma};
  std::vector<RfPolynomial> xp{{RationalFunction(1)}}, yp{{RationalFunction(1)}};
  for (std::size_t i = 1; i <= d; ++i) {
    xp.push_back(rf_mul(xp.back(), x));
    yp.push_back(rf_mul(yp.back(), y));
  }
  RfPolynomial acc(d + 1, RationalFunction(0));
  for (std::size_t k = 0; k <= d; ++k) {
    if (c[k].is_zero()) continue;
    RfPolynomial term = rf_mul(xp[d - k], yp[k]);
    for (std::size_t j = 0; j < term.size(); ++j) acc[j] = acc[j] + c[k] * term[j];
  }
  std::reverse(acc.begin(), acc.end());
  return acc;
}

}  // namespace

ConjugatedLimit conjugated_family_limit(const FamilySpec& f, const MatrixFamily& m, const Rational& tau) {
  f.validate();
  if ((m.alpha * m.delta - m.beta * m.gamma).is_zero()) throw SingularMatrix("matrix family is singular");

  // Limit of conjugates: conjugate over Q(t^(1/e)) first, expand afterwards.
  const auto p = substitute(f.num, m);
  const auto q = substitute(f.den, m);
  FamilySpec g;
  g.degree = f.degree;
  for (std::size_t k = 0; k < p.size(); ++k) {
    g.num.push_back(m.delta * p[k] - m.beta * q[k]);
    g.den.push_back(m.alpha * q[k] - m.gamma * p[k]);
  }
  ValuedRationalMap conjugated = family_limit_adaptive(g, tau).map;

  // Conjugate of limits.
  const AdaptiveLimit limit = family_limit_adaptive(f, tau);
  const Rational& prec = limit.precision;
  ConjugationMatrix lm(m.alpha.expand(prec), m.beta.expand(prec), m.gamma.expand(prec), m.delta.expand(prec));
  ValuedRationalMap reference = conjugate(limit.map, lm);

  const bool commutes = same_map(conjugated, reference);
  const bool beth = good_reduction(conjugated);
  return {std::move(conjugated), std::move(reference), commutes, beth};
}

}  // namespace hybridrat
