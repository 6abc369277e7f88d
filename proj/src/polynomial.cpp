#include "hybridrat/polynomial.h"

#include <algorithm>
#include <stdexcept>

namespace hybridrat {

namespace qpoly {

QPolynomial trimmed(QPolynomial p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

long degree(const QPolynomial& p) {
  long d = static_cast<long>(p.size()) - 1;
  while (d >= 0 && p[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

QPolynomial add(const QPolynomial& a, const QPolynomial& b) {
  QPolynomial r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trimmed(std::move(r));
}

QPolynomial sub(const QPolynomial& a, const QPolynomial& b) { return add(a, scale(b, -1)); }

QPolynomial mul(const QPolynomial& a, const QPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  QPolynomial r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return trimmed(std::move(r));
}

QPolynomial scale(const QPolynomial& a, const Rational& c) {
  QPolynomial r = a;
  for (auto& x : r) x *= c;
  return trimmed(std::move(r));
}

std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a, const QPolynomial& b) {
  QPolynomial den = trimmed(b);
  if (den.empty()) throw std::domain_error("polynomial division by zero");
  QPolynomial rem = trimmed(a);
  const long db = static_cast<long>(den.size()) - 1;
  if (static_cast<long>(rem.size()) - 1 < db) return {{}, rem};
  QPolynomial quo(rem.size() - den.size() + 1);
  for (long k = static_cast<long>(rem.size()) - 1; k >= db; --k) {
    const Rational c = rem[static_cast<std::size_t>(k)] / den.back();
    quo[static_cast<std::size_t>(k - db)] = c;
    if (c == 0) continue;
    for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * den[static_cast<std::size_t>(j)];
  }
  return {trimmed(std::move(quo)), trimmed(std::move(rem))};
}

QPolynomial gcd(QPolynomial a, QPolynomial b) {
  a = trimmed(std::move(a));
  b = trimmed(std::move(b));
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return scale(a, 1 / a.back());
}

Rational evaluate(const QPolynomial& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace qpoly

namespace spoly {

SeriesPolynomial mul(const SeriesPolynomial& a, const SeriesPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  SeriesPolynomial r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

SeriesPolynomial add(const SeriesPolynomial& a, const SeriesPolynomial& b) {
  SeriesPolynomial r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

SeriesPolynomial scale(const SeriesPolynomial& a, const PuiseuxSeries& c) {
  SeriesPolynomial r = a;
  for (auto& x : r) x = x * c;
  return r;
}

PuiseuxSeries evaluate(const SeriesPolynomial& p, const PuiseuxSeries& x) {
  PuiseuxSeries acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

SeriesPolynomial taylor_shift(const SeriesPolynomial& p, const PuiseuxSeries& x) {
  // Repeated synthetic division by (w - x).
  SeriesPolynomial c = p;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += x * c[k];
  }
  return c;
}

}  // namespace spoly

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

PuiseuxSeries determinant(std::vector<std::vector<PuiseuxSeries>> m) {
  const std::size_t n = m.size();
  if (n == 0) return PuiseuxSeries(1);
  bool negate = false;
  PuiseuxSeries previous(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    bool saw_unknown = false;
    for (std::size_t i = k; i < n; ++i) {
      if (m[i][k].is_unknown_zero()) saw_unknown = true;
      if (!m[i][k].has_known_terms()) continue;
      if (pivot == n || m[i][k].valuation() < m[pivot][k].valuation()) pivot = i;
    }
    if (pivot == n) {
      if (saw_unknown) throw PrecisionExhausted("determinant pivot column is zero up to truncation");
      return PuiseuxSeries();
    }
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        PuiseuxSeries v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = PuiseuxSeries::divide(v, previous);
      }
      m[i][k] = PuiseuxSeries();
    }
    previous = m[k][k];
  }
  PuiseuxSeries det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace hybridrat
