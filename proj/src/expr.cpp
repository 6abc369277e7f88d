#include "hybridrat/expr.h"

#include <cctype>

namespace hybridrat {

// ---------------------------------------------------------------------------
// Lexer

void syntax_error(const std::string& what, const Token& at) { throw SyntaxError(what, at.line, at.column); }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, column = 1, depth = 0;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    column += static_cast<int>(n);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      if (depth == 0) out.push_back({Token::Kind::newline, "\n", line, column});
      ++i;
      ++line;
      column = 1;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::number, std::string(text.substr(i, j - i)), line, column});
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::ident, std::string(text.substr(i, j - i)), line, column});
      advance(j - i);
    } else if (std::string_view("+-*/^()[],=;").find(c) != std::string_view::npos) {
      if (c == '(' || c == '[') ++depth;
      if ((c == ')' || c == ']') && depth > 0) --depth;
      out.push_back({Token::Kind::symbol, std::string(1, c), line, column});
      advance(1);
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", line, column);
    }
  }
  out.push_back({Token::Kind::end, "", line, column});
  return out;
}

// ---------------------------------------------------------------------------
// Tree

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_symbol(const Token& t, char c) { return t.kind == Token::Kind::symbol && t.text.size() == 1 && t.text[0] == c; }

}  // namespace

ExprPtr make_number(const Rational& value) { return make(Expr{Expr::Kind::number, value, {}, {}}); }
ExprPtr make_t() { return make(Expr{Expr::Kind::t, 0, {}, {}}); }
ExprPtr make_variable(std::string name) { return make(Expr{Expr::Kind::variable, 0, std::move(name), {}}); }
ExprPtr make_unary(Expr::Kind kind, ExprPtr arg) { return make(Expr{kind, 0, {}, {std::move(arg)}}); }
ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs) {
  return make(Expr{kind, 0, {}, {std::move(lhs), std::move(rhs)}});
}
ExprPtr make_pow(ExprPtr base, const Rational& exponent) {
  return make(Expr{Expr::Kind::pow, exponent, {}, {std::move(base)}});
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_expr(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    case Expr::Kind::neg:
      return 3;
    case Expr::Kind::pow:
      return 4;
    case Expr::Kind::number:
      return e.value.get_den() == 1 && e.value >= 0 ? 5 : 0;
    default:
      return 5;
  }
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + to_string(e) + ")" : to_string(e); }

}  // namespace

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number:
      return e.value.get_str();
    case Expr::Kind::t:
      return "t";
    case Expr::Kind::variable:
      return e.name;
    case Expr::Kind::neg:
      return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div: {
      const int p = precedence(e);
      const char* op = e.kind == Expr::Kind::add ? " + " : e.kind == Expr::Kind::sub ? " - "
                       : e.kind == Expr::Kind::mul ? "*" : "/";
      return wrap(*e.args[0], precedence(*e.args[0]) < p) + op + wrap(*e.args[1], precedence(*e.args[1]) <= p);
    }
    case Expr::Kind::pow: {
      std::string base = wrap(*e.args[0], precedence(*e.args[0]) < 5);
      if (e.value.get_den() == 1 && e.value >= 0) return base + "^" + e.value.get_str();
      return base + "^(" + e.value.get_str() + ")";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& tokens, std::size_t& pos) : tokens_(tokens), pos_(pos) {}

  ExprPtr sum() {
    ExprPtr lhs = product();
    for (;;) {
      const Token& op = peek();
      if (is_symbol(op, '+') || is_symbol(op, '-')) {
        ++pos_;
        lhs = at(make_binary(op.text == "+" ? Expr::Kind::add : Expr::Kind::sub, lhs, product()), op);
      } else {
        return lhs;
      }
    }
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  static ExprPtr at(ExprPtr e, const Token& tok) {
    auto copy = std::make_shared<Expr>(*e);
    copy->line = tok.line;
    copy->column = tok.column;
    return copy;
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    for (;;) {
      const Token& op = peek();
      if (is_symbol(op, '*') || is_symbol(op, '/')) {
        ++pos_;
        lhs = at(make_binary(op.text == "*" ? Expr::Kind::mul : Expr::Kind::div, lhs, unary()), op);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    const Token& tok = peek();
    if (is_symbol(tok, '-')) {
      ++pos_;
      return at(make_unary(Expr::Kind::neg, unary()), tok);
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    const Token& caret = peek();
    if (!is_symbol(caret, '^')) return base;
    ++pos_;
    const Token& start = peek();
    Rational exponent = exponent_literal();
    if (exponent.get_den() != 1 && base->kind != Expr::Kind::t) {
      syntax_error("fractional exponents are only allowed on t", start);
    }
    if (is_symbol(peek(), '^')) syntax_error("chained exponents need parentheses", peek());
    return at(make_pow(base, exponent), caret);
  }

  Integer integer() {
    const Token& tok = peek();
    if (tok.kind != Token::Kind::number) syntax_error("expected an integer", tok);
    ++pos_;
    return Integer(tok.text);
  }

  Rational exponent_literal() {
    const Token& tok = peek();
    if (is_symbol(tok, '-')) {
      ++pos_;
      return Rational(-integer());
    }
    if (tok.kind == Token::Kind::number) return Rational(integer());
    if (!is_symbol(tok, '(')) syntax_error("expected an exponent", tok);
    ++pos_;
    bool negative = false;
    if (is_symbol(peek(), '-')) {
      negative = true;
      ++pos_;
    }
    Integer num = integer();
    Integer den = 1;
    if (is_symbol(peek(), '/')) {
      ++pos_;
      const Token& d = peek();
      den = integer();
      if (den == 0) syntax_error("zero denominator in exponent", d);
    }
    if (!is_symbol(peek(), ')')) syntax_error("expected ')'", peek());
    ++pos_;
    return ratio(negative ? Integer(-num) : num, den);
  }

  ExprPtr primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::number) {
      ++pos_;
      return at(make_number(Rational(Integer(tok.text))), tok);
    }
    if (tok.kind == Token::Kind::ident) {
      ++pos_;
      return at(tok.text == "t" ? make_t() : make_variable(tok.text), tok);
    }
    if (is_symbol(tok, '(')) {
      ++pos_;
      ExprPtr inner = sum();
      if (!is_symbol(peek(), ')')) syntax_error("expected ')'", peek());
      ++pos_;
      return inner;
    }
    if (tok.kind == Token::Kind::end) syntax_error("unexpected end of input", tok);
    syntax_error("unexpected '" + (tok.kind == Token::Kind::newline ? std::string("newline") : tok.text) + "'", tok);
  }

  const std::vector<Token>& tokens_;
  std::size_t& pos_;
};

}  // namespace

ExprPtr parse_expression(const std::vector<Token>& tokens, std::size_t& pos) {
  return ExprParser(tokens, pos).sum();
}

ExprPtr parse_expression(std::string_view text) {
  const auto tokens = tokenize(text);
  std::size_t pos = 0;
  ExprPtr e = parse_expression(tokens, pos);
  if (tokens[pos].kind != Token::Kind::end) syntax_error("unexpected '" + tokens[pos].text + "'", tokens[pos]);
  return e;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void node_error(const std::string& what, const Expr& e) { throw SyntaxError(what, e.line, e.column); }

}  // namespace

RationalFunction to_rational_function(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number:
      return RationalFunction(e.value);
    case Expr::Kind::t:
      return RationalFunction::monomial(1, 1);
    case Expr::Kind::variable:
      node_error("unknown name '" + e.name + "'", e);
    case Expr::Kind::neg:
      return -to_rational_function(*e.args[0]);
    case Expr::Kind::add:
      return to_rational_function(*e.args[0]) + to_rational_function(*e.args[1]);
    case Expr::Kind::sub:
      return to_rational_function(*e.args[0]) - to_rational_function(*e.args[1]);
    case Expr::Kind::mul:
      return to_rational_function(*e.args[0]) * to_rational_function(*e.args[1]);
    case Expr::Kind::div: {
      RationalFunction d = to_rational_function(*e.args[1]);
      if (d.is_zero()) node_error("division by zero", e);
      return to_rational_function(*e.args[0]) / d;
    }
    case Expr::Kind::pow: {
      if (e.value.get_den() != 1) {
        if (e.args[0]->kind != Expr::Kind::t) node_error("fractional exponents are only allowed on t", e);
        return RationalFunction::monomial(1, e.value);
      }
      RationalFunction b = to_rational_function(*e.args[0]);
      if (e.value < 0 && b.is_zero()) node_error("division by zero", e);
      return b.pow(to_int64(e.value.get_num()));
    }
  }
  node_error("malformed expression", e);
}

MvPolynomial to_polynomial(const Expr& e, const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  switch (e.kind) {
    case Expr::Kind::number:
      return MvPolynomial::constant(n, e.value);
    case Expr::Kind::t:
      node_error("observables are polynomials in the coefficients; t is not allowed", e);
    case Expr::Kind::variable:
      for (std::size_t i = 0; i < n; ++i) {
        if (names[i] == e.name) return MvPolynomial::variable(n, i);
      }
      node_error("unknown name '" + e.name + "'", e);
    case Expr::Kind::neg:
      return -to_polynomial(*e.args[0], names);
    case Expr::Kind::add:
      return to_polynomial(*e.args[0], names) + to_polynomial(*e.args[1], names);
    case Expr::Kind::sub:
      return to_polynomial(*e.args[0], names) - to_polynomial(*e.args[1], names);
    case Expr::Kind::mul:
      return to_polynomial(*e.args[0], names) * to_polynomial(*e.args[1], names);
    case Expr::Kind::div: {
      MvPolynomial d = to_polynomial(*e.args[1], names);
      if (d.total_degree() != 0) node_error("observables may only be divided by nonzero constants", e);
      return to_polynomial(*e.args[0], names) * MvPolynomial::constant(n, 1 / d.terms().begin()->second);
    }
    case Expr::Kind::pow:
      if (e.value < 0 || e.value.get_den() != 1) node_error("observables need nonnegative integer powers", e);
      return to_polynomial(*e.args[0], names).pow(static_cast<unsigned>(to_int64(e.value.get_num())));
  }
  node_error("malformed expression", e);
}

ExprPtr from_series(const PuiseuxSeries& x) {
  if (!x.is_exact()) throw std::invalid_argument("only exact series have an expression form");
  if (x.is_zero()) return make_number(0);
  ExprPtr acc;
  for (const auto& term : x.terms()) {
    const Rational q = make_rational(term.exponent, x.ramification());
    const Rational mag = abs(term.coeff);
    ExprPtr coeff = mag.get_den() == 1 ? make_number(mag)
                                       : make_binary(Expr::Kind::div, make_number(Rational(mag.get_num())),
                                                     make_number(Rational(mag.get_den())));
    ExprPtr body;
    if (q == 0) {
      body = coeff;
    } else {
      ExprPtr power = q == 1 ? make_t() : make_pow(make_t(), q);
      body = mag == 1 ? power : make_binary(Expr::Kind::mul, coeff, power);
    }
    if (!acc) {
      acc = term.coeff < 0 ? make_unary(Expr::Kind::neg, body) : body;
    } else {
      acc = make_binary(term.coeff < 0 ? Expr::Kind::sub : Expr::Kind::add, acc, body);
    }
  }
  return acc;
}

}  // namespace hybridrat
