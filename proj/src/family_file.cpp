#include "hybridrat/family_file.h"

#include <set>

namespace hybridrat {

namespace {

bool is_symbol(const Token& t, char c) { return t.kind == Token::Kind::symbol && t.text.size() == 1 && t.text[0] == c; }

class FileParser {
 public:
  explicit FileParser(std::string_view text) : tokens_(tokenize(text)) {}

  FamilyFile parse() {
    FamilyFile f;
    std::optional<Token> degree_token;
    for (;;) {
      skip_separators();
      if (peek().kind == Token::Kind::end) break;
      const Token key = peek();
      if (key.kind != Token::Kind::ident) syntax_error("expected a key", key);
      if (!seen_.insert(key.text).second) syntax_error("duplicate key '" + key.text + "'", key);
      ++pos_;
      expect('=');
      if (key.text == "degree") {
        degree_token = peek();
        const long d = integer_value(-1000000, 1000000);
        if (d < 1 || d > 1000) throw DegreeError("degree must lie in [1, 1000], got " + std::to_string(d));
        f.degree = static_cast<int>(d);
      } else if (key.text == "num") {
        f.num = list();
      } else if (key.text == "den") {
        f.den = list();
      } else if (key.text == "t0") {
        f.t0 = rational_value();
        if (*f.t0 <= 0 || *f.t0 >= 1) syntax_error("t0 must lie in (0, 1)", key);
      } else if (key.text == "samples") {
        f.samples = integer_value(1, 1000000);
      } else if (key.text == "precision") {
        f.precision = rational_value();
        if (*f.precision <= 0) syntax_error("precision must be positive", key);
      } else if (key.text == "max_ramification") {
        f.max_ramification = integer_value(1, 1000);
      } else if (key.text == "search_depth") {
        f.search_depth = rational_value();
        if (*f.search_depth <= 0) syntax_error("search_depth must be positive", key);
      } else if (key.text == "max_probes") {
        f.max_probes = integer_value(1, 1000000000);
      } else if (key.text == "iterate_power") {
        f.iterate_power = integer_value(1, 16);
      } else if (key.text == "conjugate") {
        f.conjugate = matrix();
      } else if (key.text == "observables") {
        f.observables = list();
      } else {
        syntax_error("unknown key '" + key.text + "'", key);
      }
      const Token& after = peek();
      if (after.kind != Token::Kind::end && after.kind != Token::Kind::newline && !is_symbol(after, ';')) {
        syntax_error("expected ';' or a line break", after);
      }
    }
    if (!seen_.count("num")) syntax_error("missing key 'num'", peek());
    if (!seen_.count("den")) syntax_error("missing key 'den'", peek());
    if (!degree_token) f.degree = static_cast<int>(f.num.size()) - 1;
    if (f.degree < 1) throw DegreeError("degree must be at least 1, got " + std::to_string(f.degree));
    const std::size_t n = static_cast<std::size_t>(f.degree) + 1;
    if (f.num.size() != n || f.den.size() != n) {
      throw ArityError("degree " + std::to_string(f.degree) + " needs " + std::to_string(n) +
                       " coefficients in num and den, got " + std::to_string(f.num.size()) + " and " +
                       std::to_string(f.den.size()));
    }
    // Check the semantics now so that errors carry positions.
    f.spec();
    f.matrix();
    f.observable_polynomials();
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  void skip_separators() {
    while (peek().kind == Token::Kind::newline || is_symbol(peek(), ';')) ++pos_;
  }

  void expect(char c) {
    if (!is_symbol(peek(), c)) syntax_error(std::string("expected '") + c + "'", peek());
    ++pos_;
  }

  ExprPtr expression() { return parse_expression(tokens_, pos_); }

  std::vector<ExprPtr> list() {
    expect('[');
    std::vector<ExprPtr> out;
    if (is_symbol(peek(), ']')) {
      ++pos_;
      return out;
    }
    for (;;) {
      out.push_back(expression());
      if (is_symbol(peek(), ',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return out;
    }
  }

  std::array<ExprPtr, 4> matrix() {
    expect('[');
    std::vector<ExprPtr> row1 = list();
    expect(',');
    std::vector<ExprPtr> row2 = list();
    expect(']');
    if (row1.size() != 2 || row2.size() != 2) throw ArityError("conjugate needs a 2x2 matrix");
    return {row1[0], row1[1], row2[0], row2[1]};
  }

  Rational rational_value() {
    const Token start = peek();
    ExprPtr e = expression();
    RationalFunction v = to_rational_function(*e);
    if (v.num().size() > 1 || v.den().size() > 1) syntax_error("expected a constant", start);
    return v.is_zero() ? Rational(0) : v.num()[0];
  }

  long integer_value(long lo, long hi) {
    const Token start = peek();
    Rational v = rational_value();
    if (v.get_den() != 1) syntax_error("expected an integer", start);
    if (v < lo || v > hi) {
      syntax_error("value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", start);
    }
    return to_int64(v.get_num());
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> seen_;
};

}  // namespace

FamilySpec FamilyFile::spec() const {
  FamilySpec s;
  s.degree = degree;
  for (const auto& e : num) s.num.push_back(to_rational_function(*e));
  for (const auto& e : den) s.den.push_back(to_rational_function(*e));
  s.t0 = t0;
  return s;
}

std::optional<MatrixFamily> FamilyFile::matrix() const {
  if (!conjugate) return std::nullopt;
  const auto& m = *conjugate;
  return MatrixFamily{to_rational_function(*m[0]), to_rational_function(*m[1]), to_rational_function(*m[2]),
                      to_rational_function(*m[3])};
}

std::vector<std::string> FamilyFile::variable_names() const {
  std::vector<std::string> names;
  for (const char* prefix : {"a", "b"}) {
    for (int i = 0; i <= degree; ++i) names.push_back(prefix + std::to_string(i));
  }
  return names;
}

std::vector<MvPolynomial> FamilyFile::observable_polynomials() const {
  std::vector<MvPolynomial> out;
  const auto names = variable_names();
  for (const auto& e : observables) out.push_back(to_polynomial(*e, names));
  return out;
}

FamilyFile parse_family(std::string_view text) { return FileParser(text).parse(); }

namespace {

std::string join(const std::vector<ExprPtr>& list) {
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ", ";
    out += to_string(*list[i]);
  }
  return out + "]";
}

}  // namespace

std::string serialize(const FamilyFile& f) {
  std::string out;
  out += "degree=" + std::to_string(f.degree) + "\n";
  out += "num=" + join(f.num) + "\n";
  out += "den=" + join(f.den) + "\n";
  if (f.t0) out += "t0=" + to_string(*f.t0) + "\n";
  if (f.samples) out += "samples=" + std::to_string(*f.samples) + "\n";
  if (f.precision) out += "precision=" + to_string(*f.precision) + "\n";
  if (f.max_ramification) out += "max_ramification=" + std::to_string(*f.max_ramification) + "\n";
  if (f.search_depth) out += "search_depth=" + to_string(*f.search_depth) + "\n";
  if (f.max_probes) out += "max_probes=" + std::to_string(*f.max_probes) + "\n";
  if (f.iterate_power) out += "iterate_power=" + std::to_string(*f.iterate_power) + "\n";
  if (f.conjugate) {
    const auto& m = *f.conjugate;
    out += "conjugate=[" + join({m[0], m[1]}) + ", " + join({m[2], m[3]}) + "]\n";
  }
  if (!f.observables.empty()) out += "observables=" + join(f.observables) + "\n";
  return out;
}

bool same_family(const FamilyFile& a, const FamilyFile& b) {
  auto same_list = [](const std::vector<ExprPtr>& x, const std::vector<ExprPtr>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!same_expr(*x[i], *y[i])) return false;
    }
    return true;
  };
  if (a.degree != b.degree || !same_list(a.num, b.num) || !same_list(a.den, b.den)) return false;
  if (a.t0 != b.t0 || a.samples != b.samples || a.precision != b.precision) return false;
  if (a.max_ramification != b.max_ramification || a.search_depth != b.search_depth) return false;
  if (a.max_probes != b.max_probes || a.iterate_power != b.iterate_power) return false;
  if (a.conjugate.has_value() != b.conjugate.has_value()) return false;
  if (a.conjugate) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (!same_expr(*(*a.conjugate)[i], *(*b.conjugate)[i])) return false;
    }
  }
  return same_list(a.observables, b.observables);
}

}  // namespace hybridrat
