#include "hybridrat/rational.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hybridrat {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& n) { return n.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::int64_t to_int64(const Integer& n) {
  if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
  return n.get_si();
}

std::int64_t denominator_of(const Rational& q) { return to_int64(q.get_den()); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

double log_abs(const Rational& q) {
  if (q == 0) throw std::domain_error("log of zero");
  auto log_int = [](const mpz_class& n) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
  };
  return log_int(q.get_num()) - log_int(q.get_den());
}

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const Integer& v) -> Integer { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(Integer(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n == 1) return;
  for (unsigned long p = 2; p < 1000; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(Integer(n / d), primes);
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> primes;
  factor_into(abs(n), primes);
  std::sort(primes.begin(), primes.end());
  std::vector<Integer> divs{1};
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    std::size_t base = divs.size();
    Integer pk = 1;
    for (std::size_t e = i; e < j; ++e) {
      pk *= primes[i];
      for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pk);
    }
    i = j;
  }
  return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& ascending) {
  std::vector<Rational> coeffs = ascending;
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::vector<Rational> roots;
  if (coeffs.size() <= 1) return roots;

  std::size_t low = 0;
  while (coeffs[low] == 0) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(low));
  }
  if (coeffs.size() > 1) {
    Integer common = 1;
    for (const auto& c : coeffs) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ints;
    ints.reserve(coeffs.size());
    for (const auto& c : coeffs) ints.emplace_back(c.get_num() * (common / c.get_den()));

    const std::size_t n = ints.size() - 1;
    auto is_root = [&](const Integer& p, const Integer& q) {
      // sum_i c_i p^i q^(n-i) == 0
      Integer acc = ints[n];
      Integer qpow = 1;
      for (std::size_t i = n; i-- > 0;) {
        qpow *= q;
        acc = acc * p + ints[i] * qpow;
      }
      return acc == 0;
    };

    // Cauchy bound prunes candidates before the exact check.
    Rational bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, ratio(abs(ints[i]), abs(ints[n])));
    bound += 1;

    const auto ps = positive_divisors(ints[0]);
    const auto qs = positive_divisors(ints[n]);
    for (const auto& q : qs) {
      for (const auto& p : ps) {
        if (gcd(p, q) != 1) continue;
        if (ratio(p, q) > bound) continue;
        if (is_root(p, q)) roots.emplace_back(p, q);
        if (is_root(Integer(-p), q)) roots.emplace_back(Integer(-p), q);
      }
    }
  }
  for (auto& r : roots) r.canonicalize();
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace hybridrat
