#include "hybridrat/ratmap.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hybridrat {

// ---------------------------------------------------------------------------
// ConjugationMatrix

ConjugationMatrix::ConjugationMatrix(PuiseuxSeries alpha, PuiseuxSeries beta, PuiseuxSeries gamma,
                                     PuiseuxSeries delta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)), delta_(std::move(delta)) {
  det_ = alpha_ * delta_ - beta_ * gamma_;
  if (det_.is_zero()) throw SingularMatrix("conjugation matrix has zero determinant");
  if (det_.is_unknown_zero()) throw SingularMatrix("conjugation matrix determinant is zero up to truncation");
}

ConjugationMatrix ConjugationMatrix::identity() { return ConjugationMatrix(1, 0, 0, 1); }

ConjugationMatrix ConjugationMatrix::diagonal(const Rational& s) {
  return ConjugationMatrix(PuiseuxSeries::monomial(1, s), 0, 0, PuiseuxSeries::monomial(1, -s));
}

ConjugationMatrix ConjugationMatrix::scaled(const PuiseuxSeries& lambda) const {
  return ConjugationMatrix(alpha_ * lambda, beta_ * lambda, gamma_ * lambda, delta_ * lambda);
}

ConjugationMatrix operator*(const ConjugationMatrix& a, const ConjugationMatrix& b) {
  return ConjugationMatrix(a.alpha_ * b.alpha_ + a.beta_ * b.gamma_, a.alpha_ * b.beta_ + a.beta_ * b.delta_,
                           a.gamma_ * b.alpha_ + a.delta_ * b.gamma_, a.gamma_ * b.beta_ + a.delta_ * b.delta_);
}

std::string ConjugationMatrix::to_expression() const {
  auto entry = [](const PuiseuxSeries& x) { return x.is_exact() ? x.to_expression() : x.to_string(); };
  return "[[" + entry(alpha_) + "," + entry(beta_) + "],[" + entry(gamma_) + "," + entry(delta_) + "]]";
}

// ---------------------------------------------------------------------------
// Resultants and normalization

namespace {

void check_shape(const CoefficientPair& c) {
  if (c.num.size() != c.den.size()) throw std::invalid_argument("numerator and denominator lengths differ");
  if (c.num.size() < 2) throw std::invalid_argument("a rational map needs degree at least 1");
}

std::vector<const PuiseuxSeries*> all_coefficients(const CoefficientPair& c) {
  std::vector<const PuiseuxSeries*> out;
  for (const auto& x : c.num) out.push_back(&x);
  for (const auto& x : c.den) out.push_back(&x);
  return out;
}

}  // namespace

PuiseuxSeries resultant(const CoefficientPair& coeffs) {
  check_shape(coeffs);
  return determinant(sylvester_matrix(coeffs.num, coeffs.den));
}

Rational min_coefficient_valuation(const CoefficientPair& coeffs) {
  std::optional<Rational> best;
  for (const auto* x : all_coefficients(coeffs)) {
    if (x->has_known_terms() && (!best || x->valuation().value() < *best)) best = x->valuation().value();
  }
  if (!best) {
    for (const auto* x : all_coefficients(coeffs)) {
      if (x->is_unknown_zero()) throw PrecisionExhausted("every coefficient is zero up to truncation");
    }
    throw AllZero("all coefficients are zero");
  }
  for (const auto* x : all_coefficients(coeffs)) {
    if (x->is_unknown_zero() && *x->precision() < *best) {
      throw PrecisionExhausted("coefficient O(t^" + x->precision()->get_str() +
                               ") may have smaller valuation than " + best->get_str());
    }
  }
  return *best;
}

Rational ord_res(const CoefficientPair& coeffs) {
  const Rational m = min_coefficient_valuation(coeffs);
  const PuiseuxSeries res = resultant(coeffs);
  if (!res.has_known_terms()) throw PrecisionExhausted("resultant is zero up to truncation");
  return res.valuation().value() - 2 * coeffs.degree() * m;
}

Rational ord_res(const ValuedRationalMap& f) {
  if (!f.resultant().has_known_terms()) throw PrecisionExhausted("resultant is zero up to truncation");
  return f.resultant().valuation().value();
}

ValuedRationalMap ValuedRationalMap::make(CoefficientPair coeffs) {
  check_shape(coeffs);
  const Rational m = min_coefficient_valuation(coeffs);
  if (m != 0) {
    for (auto& x : coeffs.num) x = x.shift(-m);
    for (auto& x : coeffs.den) x = x.shift(-m);
  }
  PuiseuxSeries res;
  try {
    res = hybridrat::resultant(coeffs);
  } catch (const PrecisionExhausted& e) {
    throw PrecisionExhausted(std::string("resultant vanishes up to truncation: ") + e.what());
  }
  if (res.is_zero()) throw DegenerateMap("resultant is zero: numerator and denominator share a factor");
  if (res.is_unknown_zero()) throw PrecisionExhausted("resultant is zero up to O(t^" + res.precision()->get_str() + ")");
  return ValuedRationalMap(std::move(coeffs), std::move(res));
}

ValuedRationalMap new_map(std::vector<PuiseuxSeries> a, std::vector<PuiseuxSeries> b, int d) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  if (a.size() != static_cast<std::size_t>(d + 1) || b.size() != static_cast<std::size_t>(d + 1)) {
    throw std::invalid_argument("expected " + std::to_string(d + 1) + " coefficients in numerator and denominator");
  }
  return ValuedRationalMap::make({std::move(a), std::move(b)});
}

std::string ValuedRationalMap::to_string() const {
  auto poly = [this](const std::vector<PuiseuxSeries>& c) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i].to_string();
    os << "]";
    return os.str();
  };
  return "degree=" + std::to_string(degree()) + "; num=" + poly(coeffs_.num) + "; den=" + poly(coeffs_.den);
}

// ---------------------------------------------------------------------------
// Conjugation

namespace {

// Descending coefficients of P(alpha Z + beta W, gamma Z + delta W) for the form P(X, Y) = sum_k c_k X^(d-k) Y^k.
std::vector<PuiseuxSeries> substitute_form(const std::vector<PuiseuxSeries>& c, const ConjugationMatrix& m) {
  const std::size_t d = c.size() - 1;
  const SeriesPolynomial x{m.beta(), m.alpha()};
  const SeriesPolynomial y{m.delta(), m.gamma()};
  std::vector<SeriesPolynomial> xp{{PuiseuxSeries(1)}}, yp{{PuiseuxSeries(1)}};
  for (std::size_t i = 1; i <= d; ++i) {
    xp.push_back(spoly::mul(xp.back(), x));
    yp.push_back(spoly::mul(yp.back(), y));
  }
  SeriesPolynomial acc(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    if (c[k].is_zero()) continue;
    acc = spoly::add(acc, spoly::scale(spoly::mul(xp[d - k], yp[k]), c[k]));
  }
  acc.resize(d + 1);
  std::reverse(acc.begin(), acc.end());
  return acc;
}

}  // namespace

CoefficientPair conjugate_coefficients(const CoefficientPair& f, const ConjugationMatrix& m) {
  check_shape(f);
  const auto p = substitute_form(f.num, m);
  const auto q = substitute_form(f.den, m);
  CoefficientPair out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.num.push_back(m.delta() * p[k] - m.beta() * q[k]);
    out.den.push_back(m.alpha() * q[k] - m.gamma() * p[k]);
  }
  return out;
}

ValuedRationalMap conjugate(const ValuedRationalMap& f, const ConjugationMatrix& m) {
  return ValuedRationalMap::make(conjugate_coefficients(f.coefficients(), m));
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

// Ascending polynomial in z of a descending coefficient vector of a degree-d form.
QPolynomial dehomogenize(const std::vector<Rational>& desc) {
  QPolynomial p(desc.rbegin(), desc.rend());
  return qpoly::trimmed(std::move(p));
}

std::vector<Rational> residues(const std::vector<PuiseuxSeries>& c) {
  std::vector<Rational> out;
  out.reserve(c.size());
  for (const auto& x : c) out.push_back(x.residue());
  return out;
}

}  // namespace

ResidueMap reduce(const ValuedRationalMap& f) {
  const int d = f.degree();
  const QPolynomial p = dehomogenize(residues(f.num()));
  const QPolynomial q = dehomogenize(residues(f.den()));
  const QPolynomial g = qpoly::gcd(p, q);
  // Common factors: the affine gcd, plus a power of Y when both forms drop degree at infinity.
  const long top = std::max(qpoly::degree(p), qpoly::degree(q));
  const long at_infinity = d - top;
  const int reduced = static_cast<int>(d - qpoly::degree(g) - at_infinity);
  const QPolynomial rp = qpoly::divmod(p, g).first;
  const QPolynomial rq = qpoly::divmod(q, g).first;
  ResidueMap r;
  r.degree = reduced;
  r.num.assign(static_cast<std::size_t>(reduced + 1), Rational(0));
  r.den.assign(static_cast<std::size_t>(reduced + 1), Rational(0));
  for (std::size_t i = 0; i < rp.size(); ++i) r.num[static_cast<std::size_t>(reduced) - i] = rp[i];
  for (std::size_t i = 0; i < rq.size(); ++i) r.den[static_cast<std::size_t>(reduced) - i] = rq[i];
  return r;
}

std::string ResidueMap::to_string() const {
  auto poly = [](const std::vector<Rational>& c) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i].get_str();
    os << "]";
    return os.str();
  };
  return "degree=" + std::to_string(degree) + "; num=" + poly(num) + "; den=" + poly(den);
}

bool good_reduction(const ValuedRationalMap& f) {
  return determinant(sylvester_matrix(residues(f.num()), residues(f.den()))) != 0;
}

bool in_beth(const CoefficientPair& coeffs) {
  const PuiseuxSeries rho = resultant(coeffs);
  if (!rho.has_known_terms()) throw PrecisionExhausted("resultant is zero up to truncation");
  const Rational v_rho = rho.valuation().value();
  const int two_d = 2 * coeffs.degree();
  // |a^I b^J / rho| <= 1 for all |I| + |J| = 2d; by multiplicativity the extreme monomials are pure powers.
  for (const auto* x : all_coefficients(coeffs)) {
    const Valuation v = x->valuation_lower_bound();
    if (v.is_infinite()) continue;
    if (!x->has_known_terms() && two_d * v.value() - v_rho < 0) {
      throw PrecisionExhausted("Silverman coordinate of a truncated coefficient is undetermined");
    }
    if (two_d * v.value() - v_rho < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Iteration and evaluation

ValuedRationalMap iterate(const ValuedRationalMap& f, int l) {
  if (l < 1) throw std::invalid_argument("iteration count must be positive");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  // Ascending polynomials in z of the current numerator and denominator forms.
  SeriesPolynomial n(f.num().rbegin(), f.num().rend());
  SeriesPolynomial m(f.den().rbegin(), f.den().rend());
  std::size_t formal = d;
  for (int step = 1; step < l; ++step) {
    std::vector<SeriesPolynomial> np{{PuiseuxSeries(1)}}, mp{{PuiseuxSeries(1)}};
    for (std::size_t i = 1; i <= d; ++i) {
      np.push_back(spoly::mul(np.back(), n));
      mp.push_back(spoly::mul(mp.back(), m));
    }
    SeriesPolynomial nn, mm;
    for (std::size_t k = 0; k <= d; ++k) {
      const SeriesPolynomial term = spoly::mul(np[d - k], mp[k]);
      nn = spoly::add(nn, spoly::scale(term, f.num()[k]));
      mm = spoly::add(mm, spoly::scale(term, f.den()[k]));
    }
    formal *= d;
    nn.resize(formal + 1);
    mm.resize(formal + 1);
    n = std::move(nn);
    m = std::move(mm);
  }
  // Composites of coprime pairs stay coprime; make() re-certifies it through a nonzero resultant.
  CoefficientPair out{{n.rbegin(), n.rend()}, {m.rbegin(), m.rend()}};
  return ValuedRationalMap::make(std::move(out));
}

ProjectivePoint evaluate(const ValuedRationalMap& f, const ProjectivePoint& z) {
  PuiseuxSeries num, den;
  if (z.infinity) {
    num = f.num().front();
    den = f.den().front();
  } else {
    num = spoly::evaluate({f.num().rbegin(), f.num().rend()}, z.value);
    den = spoly::evaluate({f.den().rbegin(), f.den().rend()}, z.value);
  }
  if (den.is_zero()) return ProjectivePoint::at_infinity();
  if (den.is_unknown_zero()) throw PrecisionExhausted("denominator vanishes up to truncation at the given point");
  return {false, num / den};
}

bool same_map(const ValuedRationalMap& f, const ValuedRationalMap& g) {
  if (f.degree() != g.degree()) return false;
  const auto a = all_coefficients(f.coefficients());
  const auto b = all_coefficients(g.coefficients());
  std::size_t pivot = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]->has_known_terms() && (pivot == a.size() || a[i]->valuation() < a[pivot]->valuation())) pivot = i;
  }
  if (!b[pivot]->has_known_terms()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(*a[pivot] * *b[j]).agrees_with(*a[j] * *b[pivot])) return false;
  }
  return true;
}

}  // namespace hybridrat
