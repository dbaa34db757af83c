#pragma once

// Formal Q(v)-linear combinations of words in the Chevalley symbols
// E_i, F_i, K_i^{+-1} over the residue alphabet I_m.  No relations are
// imposed: K_i K_i^{-1} is a word of length two, not the unit.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qembed/qfield.hpp"

namespace qembed {

enum class GenKind : std::uint8_t { E = 0, F = 1, K = 2 };

struct GeneratorSymbol {
  GenKind kind = GenKind::E;
  std::uint8_t index = 0;
  std::int8_t kexp = 1;  // +-1 for K, always +1 otherwise

  static GeneratorSymbol E(int i) { return {GenKind::E, static_cast<std::uint8_t>(i), 1}; }
  static GeneratorSymbol F(int i) { return {GenKind::F, static_cast<std::uint8_t>(i), 1}; }
  static GeneratorSymbol K(int i, int e = 1) {
    return {GenKind::K, static_cast<std::uint8_t>(i), static_cast<std::int8_t>(e < 0 ? -1 : 1)};
  }

  auto operator<=>(const GeneratorSymbol&) const = default;
  std::string to_string() const;
};

using Word = std::vector<GeneratorSymbol>;

// Length first, then lexicographic on (kind, index, kexp).
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingImage : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class AlgebraExpression {
 public:
  using TermMap = std::map<Word, RationalFunction, WordOrder>;

  explicit AlgebraExpression(int alphabet_size);

  static AlgebraExpression scalar(int m, const RationalFunction& c);
  static AlgebraExpression unit(int m) { return scalar(m, 1); }
  static AlgebraExpression generator(int m, GeneratorSymbol s);
  static AlgebraExpression word(int m, Word w, const RationalFunction& c = 1);

  int alphabet_size() const { return m_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Scalar value when the only word is the empty one.
  std::optional<RationalFunction> as_scalar() const;

  void add_term(const Word& w, const RationalFunction& c);

  AlgebraExpression operator-() const;
  AlgebraExpression& operator+=(const AlgebraExpression& o);
  AlgebraExpression& operator-=(const AlgebraExpression& o);
  AlgebraExpression& operator*=(const RationalFunction& c);
  friend AlgebraExpression operator+(AlgebraExpression a, const AlgebraExpression& b) { return a += b; }
  friend AlgebraExpression operator-(AlgebraExpression a, const AlgebraExpression& b) { return a -= b; }
  friend AlgebraExpression operator*(const AlgebraExpression& a, const AlgebraExpression& b);
  friend AlgebraExpression operator*(AlgebraExpression a, const RationalFunction& c) { return a *= c; }
  friend AlgebraExpression operator*(const RationalFunction& c, AlgebraExpression a) { return a *= c; }
  bool operator==(const AlgebraExpression& o) const = default;

  AlgebraExpression pow(int p) const;

  std::string to_string() const;
  // Grammar (whitespace-insensitive):
  //   expr := term (('+'|'-') term)*
  //   term := [coeff '*'] factor ('*' factor)*
  //   factor := gen ['^(' int ')'];  gen := ('E'|'F') digits | 'K' digits ['^-1']
  static AlgebraExpression parse(std::string_view text, int alphabet_size);

 private:
  void check_symbol(const GeneratorSymbol& s) const;

  int m_;
  TermMap terms_;
};

// x^p / [p]!; p = 0 gives the unit.
AlgebraExpression divided_power(const AlgebraExpression& x, int p);

using GeneratorImages = std::map<GeneratorSymbol, AlgebraExpression>;

// Extends `images` to an algebra map into the free algebra on I_{target_m}.
AlgebraExpression substitute_generators(const AlgebraExpression& x, const GeneratorImages& images, int target_m);

// Maximum word length; 0 for scalars and for zero.
std::size_t word_length_bound(const AlgebraExpression& x);

// The inverse of a monomial in K-symbols: reversed word with flipped exponents
// and inverted coefficient.  Throws std::invalid_argument otherwise.
AlgebraExpression inverse_k_word(const AlgebraExpression& x);

std::ostream& operator<<(std::ostream& os, const AlgebraExpression& x);

}  // namespace qembed
