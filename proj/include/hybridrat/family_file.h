#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridrat/expr.h"

namespace hybridrat {

/// Contents of a family file: `key=value` entries separated by `;` or line breaks, lists in brackets.
///
///   degree=1; num=[1, -t]; den=[1/t, 1]
///   t0=1/2; samples=30
///   conjugate=[[t^(1/2), 0], [0, t^(-1/2)]]
///   observables=[a0*b1 - a1*b0, a1]
struct FamilyFile {
  int degree = 1;
  std::vector<ExprPtr> num;
  std::vector<ExprPtr> den;
  std::optional<Rational> t0;
  std::optional<long> samples;
  std::optional<Rational> precision;
  std::optional<long> max_ramification;
  std::optional<Rational> search_depth;
  std::optional<long> max_probes;
  std::optional<long> iterate_power;
  std::optional<std::array<ExprPtr, 4>> conjugate;
  std::vector<ExprPtr> observables;

  FamilySpec spec() const;
  std::optional<MatrixFamily> matrix() const;
  /// Coefficient variable names a0..ad, b0..bd.
  std::vector<std::string> variable_names() const;
  std::vector<MvPolynomial> observable_polynomials() const;
};

/// Throws SyntaxError (with line and column), ArityError or DegreeError. `degree` defaults to the length of `num`
/// minus one.
FamilyFile parse_family(std::string_view text);

/// One entry per line, in a fixed key order; parse_family(serialize(f)) reproduces f.
std::string serialize(const FamilyFile& f);

bool same_family(const FamilyFile& a, const FamilyFile& b);

}  // namespace hybridrat
