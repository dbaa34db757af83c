#include "qembed/detail/lexer.hpp"

#include <cctype>
#include <climits>

namespace qembed::detail {

Lexer::Lexer(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Tok::Int;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) t.text += text[i++];
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      // Identifiers never absorb digits: "E12" lexes as "E" then 12.
      t.kind = Tok::Ident;
      while (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        t.text += text[i++];
    } else {
      switch (ch) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case ',': t.kind = Tok::Comma; break;
        default: throw ParseError(i, std::string("unexpected character '") + ch + "'");
      }
      t.text = std::string(1, ch);
      ++i;
    }
    toks_.push_back(std::move(t));
  }
  Token end;
  end.pos = text.size();
  toks_.push_back(end);
}

const Token& Lexer::peek(std::size_t ahead) const {
  const std::size_t k = i_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

Token Lexer::next() {
  Token t = peek();
  if (i_ + 1 < toks_.size()) ++i_;
  return t;
}

bool Lexer::accept(Tok kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

bool Lexer::at_ident(std::string_view name, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Tok::Ident && t.text == name;
}

Token Lexer::expect(Tok kind, const char* what) {
  if (!at(kind)) fail(std::string("expected ") + what);
  return next();
}

void Lexer::fail(const std::string& message) const {
  const Token& t = peek();
  const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(t.pos, message + ", found " + found);
}

int parse_signed_int(Lexer& lex) {
  bool neg = false;
  if (lex.accept(Tok::Minus)) neg = true;
  else lex.accept(Tok::Plus);
  const Token t = lex.expect(Tok::Int, "integer");
  const mpz_class z(t.text);
  if (!z.fits_sint_p()) throw ParseError(t.pos, "integer out of range");
  const long value = z.get_si();
  return static_cast<int>(neg ? -value : value);
}

namespace {

RationalFunction parse_scalar_atom(Lexer& lex) {
  if (lex.at(Tok::Int)) return RationalFunction(mpz_class(lex.next().text));
  if (lex.at_ident("v")) {
    lex.next();
    return RationalFunction::v_power(1);
  }
  if (lex.accept(Tok::LParen)) {
    RationalFunction inner = parse_scalar_sum(lex);
    lex.expect(Tok::RParen, "')'");
    return inner;
  }
  lex.fail("expected integer, 'v' or '('");
}

RationalFunction parse_scalar_prod(Lexer& lex) {
  RationalFunction acc = parse_scalar_power(lex);
  for (;;) {
    if (lex.accept(Tok::Star)) {
      acc *= parse_scalar_power(lex);
    } else if (lex.at(Tok::Slash)) {
      const std::size_t pos = lex.next().pos;
      const RationalFunction d = parse_scalar_power(lex);
      if (d.is_zero()) throw ParseError(pos, "division by zero");
      acc /= d;
    } else {
      return acc;
    }
  }
}

}  // namespace

RationalFunction parse_scalar_power(Lexer& lex) {
  RationalFunction base = parse_scalar_atom(lex);
  if (!lex.at(Tok::Caret)) return base;
  const std::size_t pos = lex.next().pos;
  int e = 0;
  if (lex.accept(Tok::LParen)) {
    e = parse_signed_int(lex);
    lex.expect(Tok::RParen, "')'");
  } else {
    e = parse_signed_int(lex);
  }
  if (e < 0 && base.is_zero()) throw ParseError(pos, "negative power of zero");
  return base.pow(e);
}

RationalFunction parse_scalar_sum(Lexer& lex) {
  RationalFunction acc;
  bool neg = false;
  if (lex.accept(Tok::Minus)) neg = true;
  else lex.accept(Tok::Plus);
  acc = parse_scalar_prod(lex);
  if (neg) acc = -acc;
  for (;;) {
    if (lex.accept(Tok::Plus)) acc += parse_scalar_prod(lex);
    else if (lex.accept(Tok::Minus)) acc -= parse_scalar_prod(lex);
    else return acc;
  }
}

}  // namespace qembed::detail
