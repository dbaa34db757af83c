#pragma once

// Tokenizer shared by the scalar, expression and tensor-vector parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qembed/qfield.hpp"

namespace qembed::detail {

enum class Tok { End, Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool accept(Tok kind);
  bool at(Tok kind, std::size_t ahead = 0) const { return peek(ahead).kind == kind; }
  bool at_ident(std::string_view name, std::size_t ahead = 0) const;
  Token expect(Tok kind, const char* what);
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Scalar grammar over Q(v):
//   sum := ['+'|'-'] prod (('+'|'-') prod)*
//   prod := power (('*'|'/') power)*
//   power := atom ['^' signed-int | '^' '(' signed-int ')']
//   atom := int | 'v' | '(' sum ')'
RationalFunction parse_scalar_sum(Lexer& lex);
RationalFunction parse_scalar_power(Lexer& lex);
int parse_signed_int(Lexer& lex);

}  // namespace qembed::detail
