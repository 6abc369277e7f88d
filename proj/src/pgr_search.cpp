#include "hybridrat/pgr_search.h"

#include <algorithm>

namespace hybridrat {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pgr:
      return "pgr";
    case Verdict::no_pgr:
      return "no_pgr";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(QuotientClass c) {
  return c == QuotientClass::converges_in_Md ? "converges_in_Md" : "degenerates_in_Md";
}

// ---------------------------------------------------------------------------
// Tree points

ConjugationMatrix TreePoint::matrix() const {
  return ConjugationMatrix(PuiseuxSeries::monomial(1, s), shift.shift(-s), 0, PuiseuxSeries::monomial(1, -s));
}

std::int64_t TreePoint::ramification() const {
  return lcm64(denominator_of(s), shift.coarsen().ramification());
}

std::string TreePoint::to_string() const { return "(" + s.get_str() + ", " + shift.to_string() + ")"; }

Rational ord_res_at(const ValuedRationalMap& f, const TreePoint& p) { return ord_res(conjugate(f, p.matrix())); }

// ---------------------------------------------------------------------------
// Closed-form profile along a ray

RayProfile::RayProfile(const ValuedRationalMap& f, PuiseuxSeries center)
    : degree_(f.degree()), base_(ord_res(f)), center_(std::move(center)) {
  const SeriesPolynomial p(f.num().rbegin(), f.num().rend());
  const SeriesPolynomial q(f.den().rbegin(), f.den().rend());
  // Up to a scalar, M = [[u, c], [0, 1]] with u = t^(2s) conjugates f to
  //   (H(u z + c)) / (u Q(u z + c)),  H = P - c Q,
  // so coefficient j of the numerator is u^j H_j and of the denominator u^(j+1) Q_j, with H_j, Q_j the Taylor
  // coefficients at c. The raw resultant picks up det^(d^2+d) = u^(d^2+d).
  const SeriesPolynomial h = spoly::add(p, spoly::scale(q, -center_));
  const SeriesPolynomial hj = spoly::taylor_shift(h, center_);
  const SeriesPolynomial qj = spoly::taylor_shift(q, center_);
  for (int j = 0; j <= degree_; ++j) {
    num_.push_back({hj[static_cast<std::size_t>(j)], j});
    den_.push_back({qj[static_cast<std::size_t>(j)], j + 1});
  }
}

namespace {

// Smallest valuation of coeff * t^(2 s slope) among the lines; throws when an O(t^tau) entry could undercut it.
template <class Lines>
Rational line_minimum(const Lines& lines, const Rational& s) {
  std::optional<Rational> best;
  for (const auto& line : lines) {
    if (!line.coeff.has_known_terms()) continue;
    Rational v = line.coeff.valuation().value() + 2 * s * line.slope;
    if (!best || v < *best) best = v;
  }
  for (const auto& line : lines) {
    if (!line.coeff.is_unknown_zero()) continue;
    Rational v = *line.coeff.precision() + 2 * s * line.slope;
    if (!best || v <= *best) throw PrecisionExhausted("truncated Taylor coefficient hides the minimal valuation");
  }
  if (!best) throw PrecisionExhausted("every coefficient vanishes along the ray");
  return *best;
}

template <class Lines>
std::vector<Rational> line_residues(const Lines& lines, const Rational& s, const Rational& m) {
  std::vector<Rational> out;
  for (const auto& line : lines) {
    if (line.coeff.has_known_terms() && line.coeff.valuation().value() + 2 * s * line.slope == m) {
      out.push_back(line.coeff.leading_coefficient());
    } else {
      out.emplace_back(0);
    }
  }
  return out;
}

}  // namespace

Rational RayProfile::min_coefficient(const Rational& s) const {
  std::vector<Line> all = num_;
  all.insert(all.end(), den_.begin(), den_.end());
  return line_minimum(all, s);
}

Rational RayProfile::value(const Rational& s) const {
  const int d = degree_;
  return base_ + 2 * s * (d * d + d) - 2 * d * min_coefficient(s);
}

std::vector<Rational> RayProfile::breakpoints(const Rational& lo, const Rational& hi) const {
  std::vector<const Line*> known;
  for (const auto* lines : {&num_, &den_}) {
    for (const auto& line : *lines) {
      if (line.coeff.has_known_terms()) known.push_back(&line);
    }
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < known.size(); ++i) {
    for (std::size_t j = i + 1; j < known.size(); ++j) {
      if (known[i]->slope == known[j]->slope) continue;
      // v_i + 2 s k_i = v_j + 2 s k_j
      Rational s = (known[j]->coeff.valuation().value() - known[i]->coeff.valuation().value()) /
                   (2 * (known[i]->slope - known[j]->slope));
      if (s > lo && s < hi) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RayProfile::Reduction RayProfile::reduction(const Rational& s) const {
  std::vector<Line> all = num_;
  all.insert(all.end(), den_.begin(), den_.end());
  const Rational m = line_minimum(all, s);
  Reduction r;
  auto num_asc = line_residues(num_, s, m);
  auto den_asc = line_residues(den_, s, m);
  r.num.assign(num_asc.rbegin(), num_asc.rend());
  r.den.assign(den_asc.rbegin(), den_asc.rend());
  // Fixed points of the conjugate: z * den - num, coefficient j is u^j (Q_(j-1) - H_j).
  std::vector<Line> fixed;
  for (int j = 0; j <= degree_ + 1; ++j) {
    PuiseuxSeries c;
    if (j >= 1) c += den_[static_cast<std::size_t>(j - 1)].coeff;
    if (j <= degree_) c -= num_[static_cast<std::size_t>(j)].coeff;
    fixed.push_back({c, j});
  }
  bool any = std::any_of(fixed.begin(), fixed.end(), [](const Line& l) { return !l.coeff.is_zero(); });
  if (any) {
    const Rational mf = line_minimum(fixed, s);
    auto fix_asc = line_residues(fixed, s, mf);
    r.fixed.assign(fix_asc.rbegin(), fix_asc.rend());
  }
  return r;
}

std::vector<Rational> root_residues(const RayProfile::Reduction& r) {
  std::vector<Rational> out;
  for (const auto* form : {&r.num, &r.den, &r.fixed}) {
    std::vector<Rational> asc(form->rbegin(), form->rend());
    for (auto& c : rational_roots(asc)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Descent

namespace {

std::optional<Rational> admissible_at_least(const Rational& x, const Rational& hi, int e_max) {
  std::optional<Rational> best;
  for (int q = 1; q <= e_max; ++q) {
    Rational c = ratio(ceil(x * q), q);
    if (c <= hi && (!best || c < *best)) best = c;
  }
  return best;
}

std::optional<Rational> admissible_at_most(const Rational& x, const Rational& lo, int e_max) {
  std::optional<Rational> best;
  for (int q = 1; q <= e_max; ++q) {
    Rational c = ratio(floor(x * q), q);
    if (c >= lo && (!best || c > *best)) best = c;
  }
  return best;
}

struct RayMove {
  Rational s;
  Rational value;
  bool resolution_limited = false;  // the continuous minimum beats every admissible point
};

// Best admissible point of the ray on [lo, hi], starting from the endpoint `start`.
std::optional<RayMove> best_on_ray(const RayProfile& ray, const Rational& lo, const Rational& hi, const Rational& start,
                                   const SearchConfig& config) {
  std::vector<Rational> candidates = ray.breakpoints(lo, hi);
  candidates.push_back(lo);
  candidates.push_back(hi);
  std::optional<Rational> best;
  Rational m1, m2;
  for (const auto& s : candidates) {
    Rational v = ray.value(s);
    if (!best || v < *best) {
      best = v;
      m1 = m2 = s;
    } else if (v == *best) {
      m1 = std::min(m1, s);
      m2 = std::max(m2, s);
    }
  }
  const bool downward = start == lo;
  RayMove move;
  std::optional<Rational> inside = downward ? admissible_at_least(m1, hi, config.e_max)
                                            : admissible_at_most(m2, lo, config.e_max);
  if (inside && *inside >= m1 && *inside <= m2) {
    move.s = *inside;
    move.value = *best;
  } else {
    std::optional<Rational> near = downward ? admissible_at_most(m1, lo, config.e_max)
                                            : admissible_at_least(m2, hi, config.e_max);
    std::optional<RayMove> pick;
    for (const auto& c : {near, inside}) {
      if (!c) continue;
      Rational v = ray.value(*c);
      if (!pick || v < pick->value) pick = RayMove{*c, v};
    }
    if (!pick) return std::nullopt;
    move = *pick;
    move.resolution_limited = move.value > *best;
  }
  if (abs(move.s - start) < config.delta_min) {
    if (move.s != start && move.value < ray.value(start)) {
      move.resolution_limited = true;
    }
    move.s = start;
    move.value = ray.value(start);
  }
  return move;
}

struct Candidate {
  Rational value;
  Rational delta;  // |s change|
  bool up;
  Rational residue;
  TreePoint target;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.delta != b.delta) return a.delta < b.delta;
  if (a.up != b.up) return a.up;
  return a.residue < b.residue;
}

void validate(const SearchConfig& c) {
  if (c.s_bound <= 0 || c.e_max < 1 || c.delta_min <= 0 || c.max_probes < 1) {
    throw std::invalid_argument("search bounds must be positive");
  }
}

}  // namespace

PgrReport minimize_ord_res(const ValuedRationalMap& f, const SearchConfig& config) {
  validate(config);
  PgrReport report;
  TreePoint point{0, PuiseuxSeries()};
  Rational current = ord_res(f);
  report.probes = 1;
  bool precision_limited = false;
  bool resolution_limited = false;
  bool budget = false;

  while (current != 0) {
    if (report.probes >= config.max_probes) {
      budget = true;
      break;
    }
    std::optional<Candidate> chosen;
    auto consider = [&](const Candidate& c) {
      if (c.value < current && (!chosen || better(c, *chosen))) chosen = c;
    };
    // Up: keep the center, shrink s.
    if (point.s > -config.s_bound) {
      try {
        RayProfile ray(f, point.shift);
        ++report.probes;
        if (auto mv = best_on_ray(ray, -config.s_bound, point.s, point.s, config)) {
          resolution_limited |= mv->resolution_limited;
          consider({mv->value, point.s - mv->s, true, 0, {mv->s, point.shift}});
        }
      } catch (const PrecisionExhausted&) {
        precision_limited = true;
      }
    }
    // Down: recenter inside the residue class c, grow s.
    if (point.s < config.s_bound) {
      std::vector<Rational> residues{-1, 0, 1};
      try {
        RayProfile here(f, point.shift);
        for (auto& c : root_residues(here.reduction(point.s))) residues.push_back(std::move(c));
      } catch (const PrecisionExhausted&) {
        precision_limited = true;
      }
      std::sort(residues.begin(), residues.end());
      residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
      for (const auto& c : residues) {
        if (report.probes >= config.max_probes) {
          budget = true;
          break;
        }
        PuiseuxSeries center = point.shift + PuiseuxSeries::monomial(c, 2 * point.s);
        try {
          RayProfile ray(f, center);
          ++report.probes;
          if (auto mv = best_on_ray(ray, point.s, config.s_bound, point.s, config)) {
            resolution_limited |= mv->resolution_limited;
            consider({mv->value, mv->s - point.s, false, c, {mv->s, center}});
          }
        } catch (const PrecisionExhausted&) {
          precision_limited = true;
        }
      }
    }
    if (!chosen) break;
    point = chosen->target;
    current = chosen->value;
  }

  report.min_ord_res = current;
  report.witness = point;
  report.ramification = point.ramification();

  if (current == 0) {
    report.witness_rechecked = good_reduction(conjugate(f, point.matrix()));
    report.verdict = report.witness_rechecked ? Verdict::pgr : Verdict::inconclusive;
    if (!report.witness_rechecked) report.note = "witness failed the independent good-reduction check";
    return report;
  }
  if (budget) {
    report.note = "probe budget of " + std::to_string(config.max_probes) + " exhausted";
    return report;
  }
  if (precision_limited) {
    report.precision_limited = true;
    report.note = "some probes ran out of series precision";
    return report;
  }
  if (resolution_limited) {
    report.note = "a better point needs s with denominator above e_max = " + std::to_string(config.e_max);
    return report;
  }
  if (abs(point.s) == config.s_bound) {
    report.note = "descent stopped on the search window boundary |s| = " + config.s_bound.get_str();
    return report;
  }

  // A local minimum above zero: only reported as no_pgr when the oracle grid agrees.
  const GridMinimum grid = brute_force_min(f, default_oracle_grid(f, config.s_bound));
  report.oracle_min = grid.value;
  if (grid.value == 0) {
    report.min_ord_res = 0;
    report.witness = grid.argmin;
    report.ramification = grid.argmin.ramification();
    report.witness_rechecked = good_reduction(conjugate(f, grid.argmin.matrix()));
    report.verdict = report.witness_rechecked ? Verdict::pgr : Verdict::inconclusive;
    report.note = "good reduction found by the oracle grid, not by the descent";
    return report;
  }
  if (grid.value < current) {
    report.note = "oracle grid found ord_res " + grid.value.get_str() + " below the descent minimum";
    return report;
  }
  report.verdict = Verdict::no_pgr;
  return report;
}

// ---------------------------------------------------------------------------
// Oracle grid

std::vector<Rational> s_range(const Rational& lo, const Rational& hi, const Rational& step) {
  if (step <= 0) throw std::invalid_argument("grid step must be positive");
  std::vector<Rational> out;
  for (Rational s = lo; s <= hi; s += step) out.push_back(s);
  return out;
}

GridMinimum brute_force_min(const ValuedRationalMap& f, const Grid& grid) {
  std::optional<GridMinimum> best;
  for (const auto& shift : grid.shifts) {
    for (const auto& s : grid.s_values) {
      TreePoint p{s, shift};
      Rational v = ord_res_at(f, p);
      if (!best || v < best->value || (v == best->value && abs(s) < abs(best->argmin.s))) {
        best = GridMinimum{v, p};
      }
    }
  }
  if (!best) throw std::invalid_argument("empty grid");
  return *best;
}

namespace {

std::vector<Rational> residues_of(const std::vector<PuiseuxSeries>& c) {
  std::vector<Rational> out;
  for (const auto& x : c) out.push_back(x.residue());
  return out;
}

// Root residues at the Gauss point of g, read off its normalized coefficients.
std::vector<Rational> gauss_point_roots(const ValuedRationalMap& g) {
  RayProfile::Reduction r;
  r.num = residues_of(g.num());
  r.den = residues_of(g.den());
  const std::size_t d = static_cast<std::size_t>(g.degree());
  std::vector<PuiseuxSeries> fixed_asc(d + 2);
  for (std::size_t j = 0; j <= d + 1; ++j) {
    if (j >= 1) fixed_asc[j] += g.den()[d - (j - 1)];
    if (j <= d) fixed_asc[j] -= g.num()[d - j];
  }
  if (std::any_of(fixed_asc.begin(), fixed_asc.end(), [](const PuiseuxSeries& x) { return !x.is_zero(); })) {
    CoefficientPair as_pair{fixed_asc, std::vector<PuiseuxSeries>(fixed_asc.size())};
    const Rational m = min_coefficient_valuation(as_pair);
    for (auto it = fixed_asc.rbegin(); it != fixed_asc.rend(); ++it) r.fixed.push_back(it->shift(-m).residue());
  }
  return root_residues(r);
}

}  // namespace

Grid root_residue_grid(const ValuedRationalMap& f, const std::vector<Rational>& s_values, int max_terms,
                       std::size_t max_shifts) {
  Grid grid;
  grid.s_values = s_values;
  std::vector<std::pair<PuiseuxSeries, int>> shifts{{PuiseuxSeries(), 0}};
  for (const auto& s : s_values) {
    const std::size_t count = shifts.size();
    for (std::size_t i = 0; i < count; ++i) {
      if (shifts[i].second >= max_terms) continue;
      const PuiseuxSeries base = shifts[i].first;
      const int terms = shifts[i].second;
      std::vector<Rational> roots;
      try {
        roots = gauss_point_roots(conjugate(f, TreePoint{s, base}.matrix()));
      } catch (const PrecisionExhausted&) {
        continue;
      }
      for (const auto& c : roots) {
        if (c == 0) continue;
        PuiseuxSeries next = base + PuiseuxSeries::monomial(c, 2 * s);
        bool seen = std::any_of(shifts.begin(), shifts.end(),
                                [&](const auto& e) { return (e.first - next).is_zero(); });
        if (!seen && shifts.size() < max_shifts) shifts.emplace_back(std::move(next), terms + 1);
      }
    }
  }
  for (auto& e : shifts) grid.shifts.push_back(std::move(e.first));
  return grid;
}

Grid default_oracle_grid(const ValuedRationalMap& f, const Rational& s_bound) {
  const Rational hi = std::min(Rational(3), s_bound);
  return root_residue_grid(f, s_range(-hi, hi, Rational(1, 4)));
}

QuotientClass classify_quotient(const ValuedRationalMap& f, const SearchConfig& config) {
  if (ord_res(f) == 0) throw std::invalid_argument("map has good reduction; it is not a boundary point");
  PgrReport report = minimize_ord_res(f, config);
  switch (report.verdict) {
    case Verdict::pgr:
      return QuotientClass::converges_in_Md;
    case Verdict::no_pgr:
      return QuotientClass::degenerates_in_Md;
    case Verdict::inconclusive:
      break;
  }
  throw Inconclusive(std::move(report));
}

}  // namespace hybridrat
