#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hybridrat/errors.h"

namespace hybridrat {

struct Token {
  enum class Kind { number, ident, symbol, newline, end };

  Kind kind;
  std::string text;
  int line;
  int column;
};

/// Splits text into integers, identifiers, single-character symbols and line breaks. `#` starts a comment.
/// Line breaks inside () or [] are dropped. Throws SyntaxError on a character outside the grammar.
std::vector<Token> tokenize(std::string_view text);

[[noreturn]] void syntax_error(const std::string& what, const Token& at);

}  // namespace hybridrat
