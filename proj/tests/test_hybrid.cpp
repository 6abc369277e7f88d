#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.h"

using namespace hybridrat;

namespace {

const PuiseuxSeries t = PuiseuxSeries::t();
const RationalFunction T = RationalFunction::monomial(1, 1);
const RationalFunction one = Rational(1), zero = Rational(0);

FamilySpec family(int d, std::vector<RationalFunction> num, std::vector<RationalFunction> den) {
  FamilySpec f;
  f.degree = d;
  f.num = std::move(num);
  f.den = std::move(den);
  return f;
}

FamilySpec rat1() { return family(1, {one, -T}, {T.pow(-1), one}); }
FamilySpec z2_plus_t() { return family(2, {one, zero, T}, {zero, zero, one}); }
FamilySpec t_z2() { return family(2, {T, zero, zero}, {zero, zero, one}); }
FamilySpec z2_plus_inv_t() { return family(2, {one, zero, T.pow(-1)}, {zero, zero, one}); }

MvPolynomial var(std::size_t n, std::size_t i) { return MvPolynomial::variable(n, i); }

}  // namespace

TEST_CASE("multivariate polynomials") {
  auto x = var(2, 0), y = var(2, 1);
  auto p = (x + y).pow(2) - x * x - y * y;
  CHECK(p == MvPolynomial::constant(2, 2) * x * y);
  CHECK(p.total_degree() == 2);
  CHECK(p.to_string({"a", "b"}) == "2*a*b");
  CHECK(p.evaluate<Rational>({3, 5}) == 30);
  CHECK_THROWS_AS(p.evaluate<Rational>({3}), std::invalid_argument);
}

TEST_CASE("resultant polynomial matches the series resultant") {
  std::mt19937_64 rng(59);
  for (int d = 1; d <= 3; ++d) {
    auto r = resultant_polynomial(d);
    CHECK(r.total_degree() == 2 * d);
    for (int i = 0; i < 10; ++i) {
      auto f = testing::random_map(rng, d, -2, 2);
      std::vector<PuiseuxSeries> x = f.num();
      x.insert(x.end(), f.den().begin(), f.den().end());
      CHECK(r.evaluate(x).agrees_with(f.resultant()));
    }
  }
}

TEST_CASE("seminorm examples") {
  EvaluationSeminorm s1{{t}};
  CHECK(seminorm_eval(var(1, 0), s1) == SeminormValue{make_rational(1, 2), Rational(1)});
  EvaluationSeminorm s2{{t, t * t}};
  CHECK(seminorm_eval(var(2, 0) * var(2, 1), s2).exponent == Rational(3));
  EvaluationSeminorm s3{{t, -t + t.pow(3)}};
  CHECK(seminorm_eval(var(2, 0) + var(2, 1), s3).exponent == Rational(3));
  CHECK(seminorm_eval(var(2, 0) - var(2, 0), s3).is_zero());
  CHECK(seminorm_eval(var(1, 0), s1).to_double() == doctest::Approx(0.5));
  EvaluationSeminorm hidden{{PuiseuxSeries(1) + PuiseuxSeries::unknown(4)}};
  CHECK_THROWS_AS(seminorm_eval(var(1, 0) - MvPolynomial::constant(1, 1), hidden), PrecisionExhausted);
}

TEST_CASE("flow examples and errors") {
  EvaluationSeminorm s{{t, t.inverse()}};
  CHECK(flow(s, 1) == s);
  CHECK(flow(flow(s, 2), 3) == flow(s, 6));
  auto p = var(2, 0) * var(2, 0) + var(2, 1);
  CHECK(seminorm_eval(p, flow(s, 2)) == seminorm_eval(p, s).pow(2));
  CHECK(same_trajectory(s, flow(s, make_rational(5, 3))));
  CHECK_FALSE(same_trajectory(s, EvaluationSeminorm{{t, t}}));
  CHECK_THROWS_AS(flow(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(flow(s, -1), std::invalid_argument);
}

TEST_CASE("flow laws and multiplicativity on 100 random instances") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    EvaluationSeminorm s{{testing::random_series(rng, -2, 2), testing::random_series(rng, -2, 2)},
                         make_rational(1, 2 + static_cast<int>(rng() % 3)),
                         make_rational(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3))};
    const Rational b = make_rational(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4));
    const Rational c = make_rational(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4));
    auto p = var(2, 0) * MvPolynomial::constant(2, Rational(static_cast<int>(rng() % 5) - 2)) + var(2, 1).pow(2);
    auto q = var(2, 0) - var(2, 1);
    CHECK(flow(s, 1) == s);
    CHECK(flow(flow(s, b), c) == flow(s, b * c));
    CHECK(seminorm_eval(p, flow(s, b)) == seminorm_eval(p, s).pow(b));
    CHECK(seminorm_eval(p * q, s) == seminorm_eval(p, s) * seminorm_eval(q, s));
  }
}

TEST_CASE("rational functions") {
  RationalFunction x(QPolynomial{-1, 0, 1}, QPolynomial{-1, 1});  // (w^2 - 1)/(w - 1)
  CHECK(x == RationalFunction(QPolynomial{1, 1}, QPolynomial{1}));
  CHECK((T / T) == RationalFunction(1));
  CHECK((T + one).pow(2) == T * T + T * Rational(2) + one);
  CHECK_THROWS_AS(T / RationalFunction(0), DivisionByZero);
  CHECK_THROWS_AS(RationalFunction(QPolynomial{1}, QPolynomial{0}), ZeroDenominator);
  CHECK((T.pow(-2) + T).valuation().value() == -2);
  CHECK(RationalFunction(0).valuation().is_infinite());
  CHECK((RationalFunction(1) / (RationalFunction(1) + T)).expand(4).to_string() == "1 - t + t^2 - t^3 + O(t^4)");
  CHECK(RationalFunction::monomial(3, make_rational(1, 2)).ramification() == 2);
  CHECK(RationalFunction::monomial(3, make_rational(1, 2)).expand(4).to_string() == "3*t^(1/2)");
  CHECK(T.ramify(3) == T);
  CHECK((T.pow(-1) + Rational(2)).at(make_rational(1, 2)) == 4);
  CHECK_THROWS_AS(T.pow(-1).at(0), SampleUndefined);
  // Starts beyond the truncation order: an unknown zero, not an exact zero.
  CHECK((T.pow(5) / (one + T)).expand(3).is_unknown_zero());
  CHECK(T.pow(5).expand(3).is_exact());
}

TEST_CASE("rational function arithmetic matches series arithmetic") {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 100; ++i) {
    auto a = testing::random_rational_function(rng), b = testing::random_rational_function(rng);
    CHECK((a + b).expand(12).agrees_with(a.expand(12) + b.expand(12)));
    CHECK((a * b).expand(8).agrees_with(a.expand(12) * b.expand(12)));
    CHECK((a - b) + b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("family validation and degeneracy") {
  CHECK_THROWS_AS(family(0, {one}, {one}).validate(), DegreeError);
  CHECK_THROWS_AS(family(2, {one, zero}, {zero, zero, one}).validate(), ArityError);
  CHECK(family_degenerate(family(1, {T, T}, {one, one})));
  CHECK_FALSE(family_degenerate(rat1()));
  CHECK_THROWS_AS(family_limit(family(1, {T, T}, {one, one}), 32), DegenerateMap);
  CHECK(rat1().sample(make_rational(1, 2)) == std::vector<Rational>{1, make_rational(-1, 2), 2, 1});
  CHECK_THROWS_AS(rat1().sample(0), SampleUndefined);
}

TEST_CASE("family limits") {
  CHECK(ord_res(family_limit(rat1(), 32)) == 2);
  CHECK(same_map(family_limit(rat1(), 32), new_map({1, -t}, {t.inverse(), 1}, 1)));
  CHECK(ord_res(family_limit(z2_plus_t(), 32)) == 0);
  CHECK(ord_res(family_limit(z2_plus_inv_t(), 32)) == 4);
  // Resultant t^40 + ... is invisible at tau = 8; the adaptive version recovers it.
  auto f = family(1, {one, zero}, {zero, T.pow(40) / (one + T)});
  CHECK_THROWS_AS(family_limit(f, 8), PrecisionExhausted);
  auto a = family_limit_adaptive(f, 8);
  CHECK(a.precision == 64);
  CHECK(ord_res(a.map) == 40);
}

TEST_CASE("family classification") {
  auto a = classify_family(z2_plus_t());
  CHECK(a.label == FamilyLabel::interior);
  CHECK(a.ord_res == 0);
  CHECK_FALSE(a.pgr.has_value());

  auto b = classify_family(t_z2());
  CHECK(b.label == FamilyLabel::boundary_pgr);
  REQUIRE(b.pgr.has_value());
  CHECK(good_reduction(conjugate(b.limit, b.pgr->witness.matrix())));

  auto c = classify_family(z2_plus_inv_t());
  CHECK(c.label == FamilyLabel::boundary_no_pgr);
  CHECK(c.ord_res == 4);

  auto d = classify_family(rat1());
  CHECK(d.label == FamilyLabel::boundary_pgr);
  CHECK(d.pgr->witness.s == make_rational(1, 2));
  CHECK(to_string(FamilyLabel::boundary_no_pgr) == "boundary_no_pgr");

  SearchConfig tiny;
  tiny.max_probes = 2;
  CHECK_THROWS_AS(classify_family(z2_plus_inv_t(), 32, tiny), Inconclusive);
}

TEST_CASE("classifier coherence on random families") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 20; ++i) {
    auto f = testing::random_family(rng, 1 + i % 2);
    FamilyClassification c = [&] {
      try {
        return classify_family(f);
      } catch (const Inconclusive&) {
        return FamilyClassification{FamilyLabel::interior, family_limit(f, 32), -1, std::nullopt, 32};
      }
    }();
    if (c.ord_res < 0) continue;
    CHECK((c.label == FamilyLabel::interior) == (c.ord_res == 0));
    if (c.label == FamilyLabel::boundary_pgr) CHECK(good_reduction(conjugate(c.limit, c.pgr->witness.matrix())));
  }
}

TEST_CASE("convergence: monomials are exact") {
  const std::size_t n = 4;  // a0, a1, b0, b1
  std::vector<MvPolynomial> monomials = {var(n, 0), var(n, 1), var(n, 2), var(n, 3), var(n, 1) * var(n, 2),
                                         var(n, 1).pow(3) * var(n, 3)};
  for (const auto& p : monomials) {
    auto r = verify_convergence(rat1(), p, make_rational(1, 2), 30);
    CHECK(r.samples.size() == 30);
    CHECK(r.samples[r.tail_start].n == 23);
    CHECK(r.tail_deviation == 0.0);
  }
  CHECK(verify_convergence(rat1(), var(n, 1), make_rational(1, 2), 30).valuation == 1);
  CHECK(verify_convergence(rat1(), var(n, 2), make_rational(1, 3), 10).valuation == -1);
}

TEST_CASE("convergence: leading cancellation") {
  const std::size_t n = 4;
  // a1*b0 = -1 cancels b1 = 1, leaving a1 = -t
  auto p = var(n, 1) * var(n, 2) + var(n, 3) + var(n, 1);
  auto r = verify_convergence(rat1(), p, make_rational(1, 2), 30);
  CHECK(r.valuation == 1);
  CHECK(r.tail_deviation < 1e-12);
}

TEST_CASE("convergence: resultant of the degree one family") {
  auto r = verify_convergence(rat1(), resultant_polynomial(1), make_rational(1, 2), 30);
  CHECK(r.valuation == 0);
  // raw resultant is the constant 2, so the deviation is 2^(1/n) - 1
  for (const auto& s : r.samples) CHECK(s.deviation == doctest::Approx(std::pow(2.0, 1.0 / s.n) - 1).epsilon(1e-9));
  CHECK(r.tail_deviation == doctest::Approx(std::pow(2.0, 1.0 / 23) - 1).epsilon(1e-9));
}

TEST_CASE("convergence errors") {
  const std::size_t n = 4;
  CHECK_THROWS_AS(verify_convergence(rat1(), var(n, 0), make_rational(3, 2), 30), std::invalid_argument);
  CHECK_THROWS_AS(verify_convergence(rat1(), var(n, 0), make_rational(1, 2), 4), std::invalid_argument);
  CHECK_THROWS_AS(verify_convergence(rat1(), var(n, 0) - var(n, 3), make_rational(1, 2), 10), std::invalid_argument);
  // a0 - 2 b1 t^-1... vanishes at t = 1/2 only
  auto p = var(n, 2) - MvPolynomial::constant(n, 2);
  CHECK_THROWS_AS(verify_convergence(rat1(), p, make_rational(1, 2), 10), SampleUndefined);
  auto pole = family(1, {one, one / (T - make_rational(1, 4))}, {zero, one});
  CHECK_THROWS_AS(verify_convergence(pole, var(n, 0), make_rational(1, 2), 10), SampleUndefined);
}

TEST_CASE("conjugated limits") {
  auto half = RationalFunction::monomial(1, make_rational(1, 2));
  auto c = conjugated_family_limit(rat1(), MatrixFamily{half, zero, zero, half.pow(-1)});
  CHECK(c.commutes);
  CHECK(c.beth_landing);
  CHECK(same_map(c.map, new_map({1, -1}, {1, 1}, 1)));

  auto id = conjugated_family_limit(rat1(), MatrixFamily::identity());
  CHECK(same_map(id.map, family_limit(rat1(), 32)));
  CHECK_FALSE(id.beth_landing);
  CHECK_THROWS_AS(conjugated_family_limit(rat1(), MatrixFamily{T, T, one, one}), SingularMatrix);
}

TEST_CASE("limit and conjugation commute on 20 random cases") {
  std::mt19937_64 rng(73);
  int done = 0;
  while (done < 20) {
    auto f = testing::random_family(rng, 1 + done % 2);
    MatrixFamily m{testing::random_rational_function(rng, 1), testing::random_rational_function(rng, 1),
                   testing::random_rational_function(rng, 1), testing::random_rational_function(rng, 1)};
    if ((m.alpha * m.delta - m.beta * m.gamma).is_zero()) continue;
    auto c = conjugated_family_limit(f, m);
    CHECK(c.commutes);
    // independent: conjugate the expanded limit by the expanded matrix
    ConjugationMatrix mm(m.alpha.expand(32), m.beta.expand(32), m.gamma.expand(32), m.delta.expand(32));
    CHECK(same_map(c.map, conjugate(family_limit(f, 32), mm)));
    ++done;
  }
}
