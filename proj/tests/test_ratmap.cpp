#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.h"

using namespace hybridrat;
using testing::t_pow;

namespace {

const PuiseuxSeries t = PuiseuxSeries::t();

ValuedRationalMap rat1_limit() { return new_map({1, -t}, {t.inverse(), 1}, 1); }

// Classical resultant of two quadratics a0 z^2 + a1 z + a2, b0 z^2 + b1 z + b2.
PuiseuxSeries quadratic_resultant(const std::vector<PuiseuxSeries>& a, const std::vector<PuiseuxSeries>& b) {
  auto x = a[0] * b[2] - a[2] * b[0];
  auto y = a[0] * b[1] - a[1] * b[0];
  auto z = a[1] * b[2] - a[2] * b[1];
  return x * x - y * z;
}

// f^M computed from f o M as fractions: M^-1(w) = (delta w - beta) / (-gamma w + alpha), evaluated at sample points.
PuiseuxSeries eval_form(const std::vector<PuiseuxSeries>& c, const PuiseuxSeries& x, const PuiseuxSeries& y) {
  PuiseuxSeries acc;
  const std::size_t d = c.size() - 1;
  for (std::size_t k = 0; k <= d; ++k) acc += c[k] * x.pow(static_cast<long>(d - k)) * y.pow(static_cast<long>(k));
  return acc;
}

}  // namespace

TEST_CASE("resultant examples") {
  // Raw coefficients of z^2 + 1/t have resultant 1; normalized, ord_res is 4.
  auto f = new_map({1, 0, t.inverse()}, {0, 0, 1}, 2);
  CHECK(resultant(CoefficientPair{{1, 0, t.inverse()}, {0, 0, 1}}).to_string() == "1");
  CHECK(ord_res(f) == 4);
  CHECK(ord_res(rat1_limit()) == 2);
  CHECK(ord_res(new_map({1, 0, t}, {0, 0, 1}, 2)) == 0);
  CHECK(ord_res(new_map({t, 0, 0}, {0, 0, 1}, 2)) == 2);
}

TEST_CASE("normalization keeps minimum valuation zero") {
  auto f = new_map({t.pow(-3), t}, {1, t.pow(2)}, 1);
  CHECK(min_coefficient_valuation(f.coefficients()) == 0);
  CHECK(f.num()[0].to_string() == "1");
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(new_map({1, 1}, {1, 1}, 1), DegenerateMap);
  CHECK_THROWS_AS(new_map({0, 0}, {0, 0}, 1), AllZero);
  CHECK_THROWS_AS(new_map({1, 1}, {1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(new_map({1}, {1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(ConjugationMatrix(1, t, t.inverse(), 1), SingularMatrix);
  // Resultant zero only up to truncation is a precision problem, not a degeneracy.
  CHECK_THROWS_AS(new_map({1, PuiseuxSeries(1) + PuiseuxSeries::unknown(2)}, {1, 1}, 1), PrecisionExhausted);
}

TEST_CASE("resultant matches the quadratic formula and direct determinants") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    std::vector<PuiseuxSeries> a, b;
    for (int k = 0; k < 3; ++k) {
      a.push_back(testing::random_series(rng, -2, 2));
      b.push_back(testing::random_series(rng, -2, 2));
    }
    CHECK(resultant(CoefficientPair{a, b}).agrees_with(quadratic_resultant(a, b)));
    // d = 1: the 2x2 determinant.
    CoefficientPair one{{a[0], a[1]}, {b[0], b[1]}};
    CHECK(resultant(one).agrees_with(a[0] * b[1] - a[1] * b[0]));
  }
}

TEST_CASE("conjugation of the degree one boundary map") {
  // M = diag(t^(1/2), t^(-1/2)): the limit becomes (z - 1)/(z + 1), which has good reduction.
  auto g = conjugate(rat1_limit(), ConjugationMatrix::diagonal(make_rational(1, 2)));
  CHECK(same_map(g, new_map({1, -1}, {1, 1}, 1)));
  CHECK(good_reduction(g));
  CHECK(ord_res(g) == 0);
  CHECK(reduce(g).degree == 1);
}

TEST_CASE("conjugate agrees with M^-1 o f o M at sample points") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    auto f = testing::random_map(rng, 2, -2, 2);
    auto m = testing::random_matrix(rng);
    auto g = conjugate(f, m);
    // f^M(w) = M^-1(f(M(w))); check at w = 2 + t.
    const PuiseuxSeries w = PuiseuxSeries(2) + t;
    auto mw_x = m.alpha() * w + m.beta();
    auto mw_y = m.gamma() * w + m.delta();
    auto fx = eval_form(f.num(), mw_x, mw_y);
    auto fy = eval_form(f.den(), mw_x, mw_y);
    // M^-1 applied to (fx : fy) is (delta fx - beta fy : -gamma fx + alpha fy).
    auto lhs_x = m.delta() * fx - m.beta() * fy;
    auto lhs_y = m.alpha() * fy - m.gamma() * fx;
    auto gx = eval_form(g.num(), w, PuiseuxSeries(1));
    auto gy = eval_form(g.den(), w, PuiseuxSeries(1));
    CHECK((lhs_x * gy).agrees_with(lhs_y * gx));
  }
}

TEST_CASE("resultant transformation law on 200 random pairs") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 3;
    auto f = testing::random_map(rng, d, -2, 2);
    auto m = testing::random_matrix(rng);
    auto raw = resultant(conjugate_coefficients(f.coefficients(), m));
    const Rational v_det = m.determinant().valuation().value();
    CHECK(raw.valuation().value() == f.resultant().valuation().value() + (d * d + d) * v_det);
    // Exact identity, not only valuations.
    CHECK(raw.agrees_with(f.resultant() * m.determinant().pow(d * d + d)));
  }
}

TEST_CASE("in_beth agrees with good reduction on 200 random maps") {
  std::mt19937_64 rng(29);
  int good = 0;
  for (int i = 0; i < 200; ++i) {
    auto f = testing::random_map(rng, 1 + i % 3, -1, 1);
    CHECK(in_beth(f) == good_reduction(f));
    good += good_reduction(f);
  }
  CHECK(good > 10);  // the corpus exercises both sides
  CHECK(good < 190);
}

TEST_CASE("reduction") {
  auto f = new_map({1, 0, t}, {0, 0, 1}, 2);
  auto r = reduce(f);
  CHECK(r.degree == 2);
  CHECK(r.to_string() == "degree=2; num=[1, 0, 0]; den=[0, 0, 1]");
  // t z^2 reduces to the constant 0.
  auto g = new_map({t, 0, 0}, {0, 0, 1}, 2);
  CHECK(reduce(g).degree == 0);
  CHECK_FALSE(good_reduction(g));
}

TEST_CASE("iterates of degree one maps match matrix powers") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    auto f = testing::random_map(rng, 1, -2, 2);
    ConjugationMatrix m(f.num()[0], f.num()[1], f.den()[0], f.den()[1]);
    ConjugationMatrix p = m;
    for (int l = 2; l <= 4; ++l) {
      p = p * m;
      auto g = iterate(f, l);
      CHECK(same_map(g, new_map({p.alpha(), p.beta()}, {p.gamma(), p.delta()}, 1)));
    }
  }
}

TEST_CASE("iterates: degree and evaluation") {
  auto f = new_map({1, 0, t}, {0, 0, 1}, 2);
  auto g = iterate(f, 3);
  CHECK(g.degree() == 8);
  ProjectivePoint z{false, PuiseuxSeries(make_rational(1, 3))};
  ProjectivePoint fz = z;
  for (int i = 0; i < 3; ++i) fz = evaluate(f, fz);
  CHECK(evaluate(g, z).value.agrees_with(fz.value));
  CHECK(evaluate(f, ProjectivePoint::at_infinity()).infinity);
  CHECK(good_reduction(g));
  CHECK_THROWS_AS(iterate(f, 0), std::invalid_argument);
}

TEST_CASE("good reduction is preserved by iteration") {
  std::mt19937_64 rng(37);
  int checked = 0;
  for (int i = 0; i < 60 && checked < 15; ++i) {
    auto f = testing::random_map(rng, 2, 0, 1);
    if (!good_reduction(f)) continue;
    ++checked;
    CHECK(good_reduction(iterate(f, 2)));
    // degree 8 resultants are slow; a few are enough
    if (checked <= 3) CHECK(good_reduction(iterate(f, 3)));
  }
  CHECK(checked > 0);
}

TEST_CASE("matrix expressions") {
  CHECK(ConjugationMatrix::diagonal(make_rational(1, 2)).to_expression() == "[[t^(1/2),0],[0,t^(-1/2)]]");
  CHECK(ConjugationMatrix::identity().to_expression() == "[[1,0],[0,1]]");
  CHECK(t_pow(-1).to_expression() == "t^(-1)");
}
