#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hybridrat/ratmap.h"

namespace hybridrat {

/// A point of the conjugation tree: the disk of center `shift` and radius |t|^(2s), reached by the unimodular
/// conjugation M(s, shift) = [[t^s, shift * t^-s], [0, t^-s]], i.e. z -> t^(2s) z + shift up to a scalar.
/// (0, 0) is the Gauss point.
struct TreePoint {
  Rational s;
  PuiseuxSeries shift;

  ConjugationMatrix matrix() const;
  /// Ramification index needed to write the matrix entries.
  std::int64_t ramification() const;
  std::string to_string() const;
};

struct SearchConfig {
  /// Search window -s_bound <= s <= s_bound.
  Rational s_bound = 4;
  /// Largest denominator allowed for s.
  int e_max = 12;
  /// Smallest accepted change of s in one move.
  Rational delta_min = Rational(1, 12);
  long max_probes = 5000;
};

enum class Verdict { pgr, no_pgr, inconclusive };
std::string to_string(Verdict v);

struct PgrReport {
  Verdict verdict = Verdict::inconclusive;
  /// Smallest ord_res found by the descent.
  Rational min_ord_res;
  TreePoint witness;
  std::int64_t ramification = 1;
  long probes = 0;
  /// For pgr: good reduction of the conjugate by the witness, recomputed through the generic conjugation.
  bool witness_rechecked = false;
  /// Minimum over the confirmation grid, when it was consulted.
  std::optional<Rational> oracle_min;
  /// Some probe ran out of series precision; re-expanding the input at a higher order may decide it.
  bool precision_limited = false;
  std::string note;
};

/// ord_res of f conjugated by M(p).
Rational ord_res_at(const ValuedRationalMap& f, const TreePoint& p);

/// ord_res along the path from infinity to `center`, as a function of s, in closed form from Taylor coefficients
/// of f at the center. Independent of the generic conjugation route used by ord_res_at.
class RayProfile {
 public:
  RayProfile(const ValuedRationalMap& f, PuiseuxSeries center);

  const PuiseuxSeries& center() const { return center_; }
  /// Throws PrecisionExhausted when truncation hides which coefficient has the smallest valuation.
  Rational value(const Rational& s) const;
  /// Breakpoints of the piecewise affine profile inside [lo, hi].
  std::vector<Rational> breakpoints(const Rational& lo, const Rational& hi) const;
  /// Residue forms (leading coefficient first) of the normalized conjugate at the point (s, center): numerator,
  /// denominator and the fixed-point form z * den - num.
  struct Reduction {
    std::vector<Rational> num, den, fixed;
  };
  Reduction reduction(const Rational& s) const;

 private:
  struct Line {
    PuiseuxSeries coeff;  // Taylor coefficient at the center
    int slope;            // power of t^(2s) multiplying it
  };
  Rational min_coefficient(const Rational& s) const;

  int degree_;
  Rational base_;  // v(Res f) for the stored coefficients
  PuiseuxSeries center_;
  std::vector<Line> num_, den_;
};

/// Directions worth exploring at a point: rational roots of the reduced numerator, denominator, their gcd and the
/// reduced fixed-point form.
std::vector<Rational> root_residues(const RayProfile::Reduction& r);

PgrReport minimize_ord_res(const ValuedRationalMap& f, const SearchConfig& config = {});

struct Grid {
  std::vector<Rational> s_values;
  std::vector<PuiseuxSeries> shifts;
};

struct GridMinimum {
  Rational value;
  TreePoint argmin;
};

/// Exact minimum of ord_res_at over every (s, shift) of the grid. Ties go to the smaller |s|, then to the earlier
/// grid entry.
GridMinimum brute_force_min(const ValuedRationalMap& f, const Grid& grid);

/// s values lo, lo + step, ..., hi.
std::vector<Rational> s_range(const Rational& lo, const Rational& hi, const Rational& step);

/// Grid over `s_values` whose shifts are grown from the origin by appending c * t^(2s) for every rational root
/// residue c seen at a grid point (generic conjugation route), with at most `max_terms` terms per shift.
Grid root_residue_grid(const ValuedRationalMap& f, const std::vector<Rational>& s_values, int max_terms = 3,
                       std::size_t max_shifts = 256);

/// The grid s in {-3, ..., 3} step 1/4 (clipped to s_bound) with root-residue shifts.
Grid default_oracle_grid(const ValuedRationalMap& f, const Rational& s_bound = 4);

enum class QuotientClass { converges_in_Md, degenerates_in_Md };
std::string to_string(QuotientClass c);

class Inconclusive : public Error {
 public:
  explicit Inconclusive(PgrReport report)
      : Error("potential good reduction search was inconclusive: " + report.note), report_(std::move(report)) {}
  const PgrReport& report() const { return report_; }

 private:
  PgrReport report_;
};

/// Boundary behaviour of the SL2 classes of a family degenerating to f. Requires ord_res(f) > 0
/// (std::invalid_argument otherwise); throws Inconclusive when the search cannot decide.
QuotientClass classify_quotient(const ValuedRationalMap& f, const SearchConfig& config = {});

}  // namespace hybridrat
