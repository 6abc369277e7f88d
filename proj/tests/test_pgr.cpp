#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.h"

using namespace hybridrat;
using testing::t_pow;

namespace {

const PuiseuxSeries t = PuiseuxSeries::t();

ValuedRationalMap squaring() { return new_map({1, 0, 0}, {0, 0, 1}, 2); }
ValuedRationalMap t_squaring() { return new_map({t, 0, 0}, {0, 0, 1}, 2); }
ValuedRationalMap z2_plus_inv_t() { return new_map({1, 0, t.inverse()}, {0, 0, 1}, 2); }
ValuedRationalMap rat1_limit() { return new_map({1, -t}, {t.inverse(), 1}, 1); }

TreePoint at(const Rational& s, PuiseuxSeries shift = PuiseuxSeries()) { return TreePoint{s, std::move(shift)}; }

}  // namespace

TEST_CASE("tree points") {
  CHECK(at(0).matrix().to_expression() == "[[1,0],[0,1]]");
  CHECK(at(make_rational(1, 2)).matrix().to_expression() == "[[t^(1/2),0],[0,t^(-1/2)]]");
  CHECK(at(make_rational(1, 3)).ramification() == 3);
  CHECK(at(make_rational(1, 2), PuiseuxSeries(1)).matrix().to_expression() == "[[t^(1/2),t^(-1/2)],[0,t^(-1/2)]]");
}

TEST_CASE("ord_res_at examples") {
  CHECK(ord_res_at(squaring(), at(0)) == 0);
  CHECK(ord_res_at(t_squaring(), at(make_rational(-1, 2))) == 0);
  CHECK(ord_res_at(rat1_limit(), at(make_rational(1, 2))) == 0);
  CHECK(ord_res_at(rat1_limit(), at(0)) == ord_res(rat1_limit()));
  // z -> z + 1 conjugates z^2 to z^2 + 2z, still good reduction
  CHECK(ord_res_at(squaring(), at(0, PuiseuxSeries(1))) == 0);
}

TEST_CASE("ord_res_at is invariant under scaling the matrix") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    auto f = testing::random_map(rng, 1 + i % 2, -2, 2);
    TreePoint p = at(testing::random_rational(rng, -2, 2, 3), testing::random_series(rng, -1, 1));
    auto m = p.matrix();
    auto lambda = testing::random_series(rng, -2, 2, 1, 1, 0);
    if (lambda.is_zero()) continue;
    CHECK(ord_res(conjugate(f, m.scaled(lambda))) == ord_res_at(f, p));
  }
}

TEST_CASE("ray profile agrees with the generic conjugation route") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 60; ++i) {
    auto f = testing::random_map(rng, 1 + i % 3, -3, 3);
    PuiseuxSeries center = (i % 3 == 0) ? PuiseuxSeries() : testing::random_series(rng, -1, 2, 1, 2, 0);
    RayProfile ray(f, center);
    for (int k = -8; k <= 8; k += 3) {
      const Rational s = make_rational(k, 4);
      CHECK(ray.value(s) == ord_res_at(f, at(s, center)));
    }
  }
}

TEST_CASE("ray profile breakpoints bracket the affine pieces") {
  auto ray = RayProfile(z2_plus_inv_t(), PuiseuxSeries());
  auto bps = ray.breakpoints(-4, 4);
  REQUIRE_FALSE(bps.empty());
  // Between consecutive breakpoints the profile is affine: midpoint equals the average.
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const Rational mid = (bps[i] + bps[i + 1]) / 2;
    CHECK(ray.value(mid) * 2 == ray.value(bps[i]) + ray.value(bps[i + 1]));
  }
}

TEST_CASE("root residues of the reduction") {
  // z^2 - 1 at the Gauss point: the fixed-point form z^3 - z^2 + 1 has no rational roots; num has +-1
  auto f = new_map({1, 0, -1}, {0, 0, 1}, 2);
  auto roots = root_residues(RayProfile(f, PuiseuxSeries()).reduction(0));
  CHECK(std::find(roots.begin(), roots.end(), Rational(1)) != roots.end());
  CHECK(std::find(roots.begin(), roots.end(), Rational(-1)) != roots.end());
}

TEST_CASE("descent examples") {
  auto r = minimize_ord_res(squaring());
  CHECK(r.verdict == Verdict::pgr);
  CHECK(r.min_ord_res == 0);
  CHECK(r.probes == 1);
  CHECK(r.witness.s == 0);

  auto q = minimize_ord_res(rat1_limit());
  CHECK(q.verdict == Verdict::pgr);
  CHECK(q.witness.s == make_rational(1, 2));
  CHECK(q.witness.shift.is_zero());
  CHECK(q.witness_rechecked);
  CHECK(q.ramification == 2);

  auto u = minimize_ord_res(t_squaring());
  CHECK(u.verdict == Verdict::pgr);
  CHECK(u.witness.s == make_rational(-1, 2));

  auto n = minimize_ord_res(z2_plus_inv_t());
  CHECK(n.verdict == Verdict::no_pgr);
  CHECK(n.min_ord_res > 0);
  REQUIRE(n.oracle_min.has_value());
  CHECK(*n.oracle_min == n.min_ord_res);
}

TEST_CASE("budget exhaustion is inconclusive") {
  SearchConfig c;
  c.max_probes = 2;
  auto r = minimize_ord_res(z2_plus_inv_t(), c);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(r.probes <= 2);
  CHECK_THROWS_AS(classify_quotient(z2_plus_inv_t(), c), Inconclusive);
}

TEST_CASE("brute force examples") {
  auto a = brute_force_min(squaring(), Grid{{-1, 0, 1}, {PuiseuxSeries()}});
  CHECK(a.value == 0);
  CHECK(a.argmin.s == 0);
  auto b = brute_force_min(t_squaring(), Grid{{-1, make_rational(-1, 2), 0}, {PuiseuxSeries()}});
  CHECK(b.value == 0);
  CHECK(b.argmin.s == make_rational(-1, 2));
  CHECK(s_range(-1, 1, make_rational(1, 2)).size() == 5);
}

TEST_CASE("descent never exceeds the start and pgr verdicts re-check") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    auto f = testing::random_map(rng, 2, -3, 3);
    auto r = minimize_ord_res(f);
    CHECK(r.min_ord_res <= ord_res(f));
    CHECK(r.min_ord_res >= 0);
    if (r.verdict == Verdict::pgr) {
      CHECK(r.min_ord_res == 0);
      CHECK(good_reduction(conjugate(f, r.witness.matrix())));
    }
    if (r.verdict == Verdict::no_pgr) {
      REQUIRE(r.oracle_min.has_value());
      CHECK(*r.oracle_min == r.min_ord_res);
    }
    // The grid is a subset of the tree, so it cannot beat the descent when the descent decided.
    if (r.verdict != Verdict::inconclusive) CHECK(brute_force_min(f, default_oracle_grid(f)).value >= r.min_ord_res);
  }
}

TEST_CASE("descent matches a fine oracle grid") {
  // step 1/12 covers every s the descent can reach at the default e_max
  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    auto f = testing::random_map(rng, 2, -3, 3);
    auto r = minimize_ord_res(f);
    if (r.verdict == Verdict::inconclusive) continue;
    auto g = brute_force_min(f, root_residue_grid(f, s_range(-3, 3, make_rational(1, 12))));
    CHECK(g.value == r.min_ord_res);
  }
}

TEST_CASE("quotient classes") {
  CHECK(classify_quotient(t_squaring()) == QuotientClass::converges_in_Md);
  CHECK(classify_quotient(rat1_limit()) == QuotientClass::converges_in_Md);
  CHECK(classify_quotient(z2_plus_inv_t()) == QuotientClass::degenerates_in_Md);
  CHECK_THROWS_AS(classify_quotient(squaring()), std::invalid_argument);
  CHECK(to_string(QuotientClass::converges_in_Md) == "converges_in_Md");
  CHECK(to_string(Verdict::no_pgr) == "no_pgr");
}

TEST_CASE("verdicts agree with the second iterate") {
  for (const auto& f : {t_squaring(), rat1_limit(), z2_plus_inv_t(), squaring()}) {
    auto a = minimize_ord_res(f);
    auto b = minimize_ord_res(iterate(f, 2));
    REQUIRE(a.verdict != Verdict::inconclusive);
    REQUIRE(b.verdict != Verdict::inconclusive);
    CHECK((a.verdict == Verdict::pgr) == (b.verdict == Verdict::pgr));
  }
}
