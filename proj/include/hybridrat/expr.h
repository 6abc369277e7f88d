#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hybridrat/hybrid.h"
#include "hybridrat/lexer.h"

namespace hybridrat {

/// Expression tree over integers, t and named variables with + - * / ^.
struct Expr {
  enum class Kind { number, t, variable, neg, add, sub, mul, div, pow };

  Kind kind;
  Rational value;    // number literal, or the exponent of pow
  std::string name;  // variable
  std::vector<std::shared_ptr<const Expr>> args;
  int line = 0;
  int column = 0;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr make_number(const Rational& value);
ExprPtr make_t();
ExprPtr make_variable(std::string name);
ExprPtr make_unary(Expr::Kind kind, ExprPtr arg);
ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_pow(ExprPtr base, const Rational& exponent);

/// Structural equality, ignoring source positions.
bool same_expr(const Expr& a, const Expr& b);

/// Minimal-parenthesis text that parses back to the same tree.
std::string to_string(const Expr& e);

/// Parses one expression. `^` takes an integer exponent, `^-k` or `^(p/q)`; a fractional exponent is only
/// accepted on t. Throws SyntaxError with the 1-based line and column of the offending character.
ExprPtr parse_expression(std::string_view text);
/// Parses one expression from tokens[pos...], advancing pos past it.
ExprPtr parse_expression(const std::vector<Token>& tokens, std::size_t& pos);

/// Value in Q(t^(1/e)). Variables are rejected with a SyntaxError at their position.
RationalFunction to_rational_function(const Expr& e);

/// Polynomial in the named variables (in the order given). Rejects t, unknown names, division by non-constants and
/// negative or fractional powers with a SyntaxError at the offending node.
MvPolynomial to_polynomial(const Expr& e, const std::vector<std::string>& names);

/// Series expression (exact series only) as a tree.
ExprPtr from_series(const PuiseuxSeries& x);

}  // namespace hybridrat
