#include "qembed/expr.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qembed/detail/lexer.hpp"

namespace qembed {

std::string GeneratorSymbol::to_string() const {
  switch (kind) {
    case GenKind::E: return "E" + std::to_string(index);
    case GenKind::F: return "F" + std::to_string(index);
    case GenKind::K: return "K" + std::to_string(index) + (kexp < 0 ? "^-1" : "");
  }
  return "?";
}

AlgebraExpression::AlgebraExpression(int alphabet_size) : m_(alphabet_size) {
  if (alphabet_size < 1 || alphabet_size > 255) throw std::invalid_argument("alphabet size must lie in [1, 255]");
}

AlgebraExpression AlgebraExpression::scalar(int m, const RationalFunction& c) {
  AlgebraExpression x(m);
  x.add_term({}, c);
  return x;
}

AlgebraExpression AlgebraExpression::generator(int m, GeneratorSymbol s) { return word(m, {s}); }

AlgebraExpression AlgebraExpression::word(int m, Word w, const RationalFunction& c) {
  AlgebraExpression x(m);
  x.add_term(w, c);
  return x;
}

void AlgebraExpression::check_symbol(const GeneratorSymbol& s) const {
  if (s.index >= m_)
    throw std::out_of_range("generator " + s.to_string() + " outside alphabet I_" + std::to_string(m_));
  if (s.kind != GenKind::K && s.kexp != 1) throw std::invalid_argument("only K symbols carry an exponent");
}

std::optional<RationalFunction> AlgebraExpression::as_scalar() const {
  if (terms_.empty()) return RationalFunction();
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

void AlgebraExpression::add_term(const Word& w, const RationalFunction& c) {
  if (c.is_zero()) return;
  for (const auto& s : w) check_symbol(s);
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraExpression AlgebraExpression::operator-() const {
  AlgebraExpression r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

AlgebraExpression& AlgebraExpression::operator+=(const AlgebraExpression& o) {
  if (o.m_ != m_) throw AlphabetMismatch("expression alphabets differ");
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

AlgebraExpression& AlgebraExpression::operator-=(const AlgebraExpression& o) { return *this += -o; }

AlgebraExpression& AlgebraExpression::operator*=(const RationalFunction& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

AlgebraExpression operator*(const AlgebraExpression& a, const AlgebraExpression& b) {
  if (a.m_ != b.m_) throw AlphabetMismatch("expression alphabets differ");
  AlgebraExpression r(a.m_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w;
      w.reserve(wa.size() + wb.size());
      w.insert(w.end(), wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      auto [it, inserted] = r.terms_.try_emplace(std::move(w), ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

AlgebraExpression AlgebraExpression::pow(int p) const {
  if (p < 0) throw std::invalid_argument("negative power of an expression");
  AlgebraExpression acc = unit(m_);
  for (int i = 0; i < p; ++i) acc = acc * *this;
  return acc;
}

AlgebraExpression divided_power(const AlgebraExpression& x, int p) {
  if (p < 0) throw std::invalid_argument("divided_power: p must be >= 0");
  return x.pow(p) * qfact(p).inverse();
}

AlgebraExpression substitute_generators(const AlgebraExpression& x, const GeneratorImages& images, int target_m) {
  AlgebraExpression out(target_m);
  for (const auto& [w, c] : x.terms()) {
    AlgebraExpression prod = AlgebraExpression::scalar(target_m, c);
    for (const auto& s : w) {
      auto it = images.find(s);
      if (it == images.end()) throw MissingImage("no image for generator " + s.to_string());
      if (it->second.alphabet_size() != target_m)
        throw AlphabetMismatch("image of " + s.to_string() + " lives over the wrong alphabet");
      prod = prod * it->second;
    }
    out += prod;
  }
  return out;
}

std::size_t word_length_bound(const AlgebraExpression& x) {
  std::size_t b = 0;
  for (const auto& [w, c] : x.terms()) b = std::max(b, w.size());
  return b;
}

AlgebraExpression inverse_k_word(const AlgebraExpression& x) {
  if (x.terms().size() != 1) throw std::invalid_argument("inverse_k_word: expected a single K-word");
  const auto& [w, c] = *x.terms().begin();
  Word inv(w.rbegin(), w.rend());
  for (auto& s : inv) {
    if (s.kind != GenKind::K) throw std::invalid_argument("inverse_k_word: word contains a non-K symbol");
    s.kexp = static_cast<std::int8_t>(-s.kexp);
  }
  return AlgebraExpression::word(x.alphabet_size(), std::move(inv), c.inverse());
}

// ------------------------------------------------------------- printing

namespace {

std::string word_text(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '*';
    s += w[i].to_string();
  }
  return s;
}

}  // namespace

std::string AlgebraExpression::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    RationalFunction mag = c;
    bool negative = false;
    if (c.is_monomial() && c.numerator()[0] < 0) {
      negative = true;
      mag = -c;
    }
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    first = false;

    std::string coeff;
    if (!mag.is_one()) coeff = mag.is_monomial() ? mag.to_string() : "(" + mag.to_string() + ")";
    if (w.empty()) {
      os << (coeff.empty() ? "1" : coeff);
    } else {
      if (!coeff.empty()) os << coeff << '*';
      os << word_text(w);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const AlgebraExpression& x) { return os << x.to_string(); }

// --------------------------------------------------------------- parsing

namespace {

using detail::Lexer;
using detail::Tok;

class ExprParser {
 public:
  ExprParser(std::string_view text, int m) : lex_(text), m_(m) {}

  AlgebraExpression run() {
    AlgebraExpression x = sum();
    if (!lex_.at(Tok::End)) lex_.fail("unexpected trailing input");
    return x;
  }

 private:
  AlgebraExpression sum() {
    bool neg = false;
    if (lex_.accept(Tok::Minus)) neg = true;
    else lex_.accept(Tok::Plus);
    AlgebraExpression acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (lex_.accept(Tok::Plus)) acc += term();
      else if (lex_.accept(Tok::Minus)) acc -= term();
      else return acc;
    }
  }

  AlgebraExpression term() {
    AlgebraExpression acc = item();
    for (;;) {
      if (lex_.accept(Tok::Star)) {
        acc = acc * item();
      } else if (lex_.at(Tok::Slash)) {
        const std::size_t pos = lex_.next().pos;
        const AlgebraExpression d = item();
        const auto s = d.as_scalar();
        if (!s) throw ParseError(pos, "division by a non-scalar expression");
        if (s->is_zero()) throw ParseError(pos, "division by zero");
        acc *= s->inverse();
      } else {
        return acc;
      }
    }
  }

  int index() {
    const detail::Token t = lex_.expect(Tok::Int, "generator index");
    const mpz_class z(t.text);
    if (z >= m_) throw ParseError(t.pos, "generator index " + t.text + " out of range for alphabet size " + std::to_string(m_));
    return static_cast<int>(z.get_si());
  }

  // '^' followed by '(' int ')' is a divided power; '^' signed-int is a power.
  AlgebraExpression power_suffix(AlgebraExpression base) {
    if (!lex_.at(Tok::Caret)) return base;
    const std::size_t pos = lex_.next().pos;
    const bool divided = lex_.accept(Tok::LParen);
    const int p = detail::parse_signed_int(lex_);
    if (divided) lex_.expect(Tok::RParen, "')'");
    const auto s = base.as_scalar();
    if (s) {
      if (p < 0 && s->is_zero()) throw ParseError(pos, "negative power of zero");
      return AlgebraExpression::scalar(m_, s->pow(p));
    }
    if (p < 0) throw ParseError(pos, "negative power of a non-scalar expression");
    return divided ? divided_power(base, p) : base.pow(p);
  }

  AlgebraExpression item() {
    if (lex_.at_ident("E") || lex_.at_ident("F")) {
      const bool is_e = lex_.next().text == "E";
      const int i = index();
      return power_suffix(AlgebraExpression::generator(m_, is_e ? GeneratorSymbol::E(i) : GeneratorSymbol::F(i)));
    }
    if (lex_.at_ident("K")) {
      lex_.next();
      const int i = index();
      int e = 1;
      if (lex_.at(Tok::Caret)) {
        const std::size_t pos = lex_.next().pos;
        const bool paren = lex_.accept(Tok::LParen);
        e = detail::parse_signed_int(lex_);
        if (paren) lex_.expect(Tok::RParen, "')'");
        if (e != 1 && e != -1) throw ParseError(pos, "K exponents must be 1 or -1");
      }
      return AlgebraExpression::generator(m_, GeneratorSymbol::K(i, e));
    }
    if (lex_.at_ident("v") || lex_.at(Tok::Int)) {
      return AlgebraExpression::scalar(m_, detail::parse_scalar_power(lex_));
    }
    if (lex_.accept(Tok::LParen)) {
      AlgebraExpression inner = sum();
      lex_.expect(Tok::RParen, "')'");
      return power_suffix(std::move(inner));
    }
    lex_.fail("expected a generator, a scalar or '('");
  }

  Lexer lex_;
  int m_;
};

}  // namespace

AlgebraExpression AlgebraExpression::parse(std::string_view text, int alphabet_size) {
  return ExprParser(text, alphabet_size).run();
}

}  // namespace qembed
