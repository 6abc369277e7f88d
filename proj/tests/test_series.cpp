#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "support.h"

using namespace hybridrat;
using testing::t_pow;

namespace {

// Independent product: exponent -> coefficient with rational keys.
std::map<Rational, Rational> naive_product(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  std::map<Rational, Rational> out;
  for (const auto& a : x.terms()) {
    for (const auto& b : y.terms()) {
      out[make_rational(a.exponent, x.ramification()) + make_rational(b.exponent, y.ramification())] +=
          a.coeff * b.coeff;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<Rational, Rational> as_map(const PuiseuxSeries& x) {
  std::map<Rational, Rational> out;
  for (const auto& a : x.terms()) out[make_rational(a.exponent, x.ramification())] = a.coeff;
  return out;
}

}  // namespace

TEST_CASE("rationals print and parse") {
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(parse_rational("-3/2") == make_rational(-3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(floor(make_rational(-1, 2)) == -1);
  CHECK(ceil(make_rational(-1, 2)) == 0);
}

TEST_CASE("rational roots") {
  // 6z^3 - 7z^2 + 1 = (z - 1)(2z - 1)(3z + 1)
  auto roots = rational_roots({1, 0, -7, 6});
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == make_rational(-1, 3));
  CHECK(roots[1] == make_rational(1, 2));
  CHECK(roots[2] == 1);
  CHECK(rational_roots({0, 0, 1}) == std::vector<Rational>{0});
  CHECK(rational_roots({1, 0, 1}).empty());
  CHECK(rational_roots({}).empty());
  // Large coefficients: (1000003 z - 999983)(z^2 + 1)
  auto big = rational_roots({-999983, 1000003, -999983, 1000003});
  REQUIRE(big.size() == 1);
  CHECK(big[0] == make_rational(999983, 1000003));
}

TEST_CASE("log_abs of huge rationals") {
  Rational huge(Integer(1) << 5000, 3);
  CHECK(log_abs(huge) == doctest::Approx(5000 * std::log(2.0) - std::log(3.0)).epsilon(1e-12));
  CHECK(log_abs(make_rational(1, 2)) == doctest::Approx(-std::log(2.0)));
}

TEST_CASE("series basics") {
  PuiseuxSeries x = PuiseuxSeries::monomial(2, make_rational(1, 2)) - PuiseuxSeries::t();
  CHECK(x.valuation().value() == make_rational(1, 2));
  CHECK(x.ramification() == 2);
  CHECK(x.to_string() == "2*t^(1/2) - t");
  CHECK(x.to_expression() == "2*t^(1/2) - t");
  CHECK(x.coefficient(1) == -1);
  CHECK(x.coefficient(5) == 0);
  CHECK(x.leading_coefficient() == 2);
  CHECK(x.residue() == 0);
  CHECK(PuiseuxSeries(0).is_zero());
  CHECK(PuiseuxSeries().valuation().is_infinite());
  CHECK_THROWS_AS(PuiseuxSeries::t().inverse().residue(), NegativeValuation);
  CHECK_THROWS_AS(PuiseuxSeries::t().with_term(make_rational(1, 3), 1).with_term(make_rational(1, 2), 1),
                  IncompatibleRamification);
  CHECK(t_pow(make_rational(2, 4)).coarsen().ramification() == 2);
  CHECK(x.ramify(3).ramification() == 6);
  CHECK(x.ramify(3).agrees_with(x));
  CHECK(PuiseuxSeries::t().shift(-1).to_string() == "1");
}

TEST_CASE("truncation propagates and consumers raise") {
  PuiseuxSeries a = PuiseuxSeries(1) + PuiseuxSeries::unknown(3);
  PuiseuxSeries b = PuiseuxSeries::t() + PuiseuxSeries::unknown(2);
  PuiseuxSeries p = a * b;
  CHECK(p.precision().value() == 2);  // min(3 + 1, 2 + 0)
  CHECK(p.coefficient(1) == 1);
  CHECK_THROWS_AS(p.coefficient(2), PrecisionExhausted);
  // Cancellation down to an unknown zero is fine until someone divides by it.
  PuiseuxSeries z = a - PuiseuxSeries(1);
  CHECK(z.is_unknown_zero());
  CHECK_THROWS_AS(PuiseuxSeries(1) / z, PrecisionExhausted);
  CHECK_THROWS_AS(PuiseuxSeries(1) / PuiseuxSeries(), DivisionByZero);
  CHECK(z.valuation().is_infinite());
  CHECK(z.valuation_lower_bound().value() == 3);
}

TEST_CASE("division: exact when possible") {
  PuiseuxSeries t = PuiseuxSeries::t();
  PuiseuxSeries num = t * t - PuiseuxSeries(1);
  PuiseuxSeries den = t - PuiseuxSeries(1);
  PuiseuxSeries q = num / den;
  CHECK(q.is_exact());
  CHECK(q.to_string() == "1 + t");
  PuiseuxSeries inv = PuiseuxSeries(1) / (PuiseuxSeries(1) - t);
  CHECK_FALSE(inv.is_exact());
  CHECK(inv.precision().value() == kDefaultRelativePrecision);
  for (int k = 0; k < 10; ++k) CHECK(inv.coefficient(k) == 1);
  // (1 - t) * inverse agrees with 1.
  CHECK(((PuiseuxSeries(1) - t) * inv).agrees_with(PuiseuxSeries(1)));
}

TEST_CASE("rational function expansion") {
  // 1/(1 + t) = 1 - t + t^2 - ...
  PuiseuxSeries x = from_rational_function({1}, {1, 1}, Rational(5));
  CHECK(x.precision().value() == 5);
  CHECK(x.to_string() == "1 - t + t^2 - t^3 + t^4 + O(t^5)");
  // Monomial denominators stay exact.
  CHECK(from_rational_function({0, 1}, {0, 0, 1}, Rational(5)).to_string() == "t^(-1)");
  CHECK_THROWS_AS(from_rational_function({1}, {0}, Rational(5)), ZeroDenominator);
  CHECK_THROWS_AS(from_rational_function({0, 0, 0, 1}, {1, 1}, Rational(2)), PrecisionExhausted);
}

TEST_CASE("product agrees with a naive oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto x = testing::random_series(rng, -3, 3, 1 + static_cast<std::int64_t>(rng() % 3), 3, 0);
    auto y = testing::random_series(rng, -3, 3, 1 + static_cast<std::int64_t>(rng() % 3), 3, 0);
    CHECK(as_map(x * y) == naive_product(x, y));
  }
}

TEST_CASE("valuation is ultrametric and multiplicative on 500 pairs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto x = testing::random_series(rng, -4, 4, 1 + static_cast<std::int64_t>(rng() % 4), 3, 0);
    auto y = testing::random_series(rng, -4, 4, 1 + static_cast<std::int64_t>(rng() % 4), 3, 0);
    const Valuation vx = x.valuation(), vy = y.valuation();
    const Valuation vs = (x + y).valuation();
    CHECK(vs >= std::min(vx, vy));
    if (vx != vy) CHECK(vs == std::min(vx, vy));
    CHECK((x * y).valuation() == vx + vy);
    if (!y.is_zero()) {
      CHECK((x / y).valuation() == (x.is_zero() ? Valuation::infinity() : Valuation(vx.value() - vy.value())));
    }
  }
}

TEST_CASE("inverse recurrence matches the product identity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto x = testing::random_series(rng, -2, 3, 1 + static_cast<std::int64_t>(rng() % 3), 4, 0);
    if (x.is_zero()) continue;
    auto inv = x.inverse(20);
    CHECK((x * inv).agrees_with(PuiseuxSeries(1)));
    if (!inv.is_exact()) CHECK((x * inv).precision().value() >= 20);
  }
}

TEST_CASE("pow") {
  PuiseuxSeries x = PuiseuxSeries(1) + PuiseuxSeries::t();
  CHECK(x.pow(3).to_string() == "1 + 3*t + 3*t^2 + t^3");
  CHECK((x.pow(-2) * x.pow(2)).agrees_with(PuiseuxSeries(1)));
  CHECK(PuiseuxSeries::t().pow(0).to_string() == "1");
}
