#pragma once

// The positive half as the free algebra on E_k (k in I_m), Lusztig's twisted
// derivations r_k, and a recursive test for membership in the Serre ideal:
// a homogeneous element of positive degree vanishes in the quotient iff every
// r_k of it does, and a degree-zero element iff its scalar is zero.

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qembed/embed.hpp"
#include "qembed/expr.hpp"
#include "qembed/report.hpp"

namespace qembed {

using EWord = std::vector<std::uint8_t>;
using MultiDegree = std::vector<int>;

struct EWordOrder {
  bool operator()(const EWord& a, const EWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

MultiDegree multidegree(const EWord& w, int m);

class PositiveElement {
 public:
  using TermMap = std::map<EWord, RationalFunction, EWordOrder>;

  explicit PositiveElement(int alphabet_size);
  static PositiveElement scalar(int m, const RationalFunction& c);
  static PositiveElement unit(int m) { return scalar(m, 1); }
  static PositiveElement generator(int m, int k);
  static PositiveElement word(int m, EWord w, const RationalFunction& c = 1);
  // Throws std::invalid_argument if x contains an F or K symbol.
  static PositiveElement from_expression(const AlgebraExpression& x);
  AlgebraExpression to_expression() const;

  int alphabet_size() const { return m_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const EWord& w, const RationalFunction& c);

  std::map<MultiDegree, PositiveElement> homogeneous_components() const;
  // The common degree, or nullopt for zero and for inhomogeneous elements.
  std::optional<MultiDegree> degree() const;

  PositiveElement operator-() const;
  PositiveElement& operator+=(const PositiveElement& o);
  PositiveElement& operator-=(const PositiveElement& o);
  PositiveElement& operator*=(const RationalFunction& c);
  friend PositiveElement operator+(PositiveElement a, const PositiveElement& b) { return a += b; }
  friend PositiveElement operator-(PositiveElement a, const PositiveElement& b) { return a -= b; }
  friend PositiveElement operator*(const PositiveElement& a, const PositiveElement& b);
  friend PositiveElement operator*(const RationalFunction& c, PositiveElement a) { return a *= c; }
  bool operator==(const PositiveElement& o) const = default;

  PositiveElement pow(int p) const;
  std::string to_string() const { return to_expression().to_string(); }

 private:
  int m_;
  TermMap terms_;
};

PositiveElement divided_power(const PositiveElement& x, int p);

// k . deg = sum_j c_kj deg_j for the affine Cartan matrix of size m.
int pairing_exponent(int m, int k, const MultiDegree& deg);

// r_k(a_1 ... a_L) = sum_{t : a_t = k} v^{k . |a_{t+1} ... a_L|} a_1 ... ^a_t ... a_L.
PositiveElement twisted_derivation(int k, const PositiveElement& x);

struct QuotientVerdict {
  bool zero = true;
  // Derivations in application order leading to a nonzero scalar.
  std::vector<int> path;
  std::optional<RationalFunction> scalar;

  std::string witness() const;
};

// Decides zero-in-quotient with a shared memo of homogeneous elements known
// to vanish (keyed on a scale-normalized form).  Thread-safe.  memo_cap = 0
// disables memoization.
class SerreQuotientTester {
 public:
  explicit SerreQuotientTester(std::size_t memo_cap = std::size_t{1} << 18);

  QuotientVerdict test(const PositiveElement& x);
  bool is_zero(const PositiveElement& x) { return test(x).zero; }

  std::size_t memo_size() const;
  std::size_t memo_cap() const { return cap_; }

 private:
  QuotientVerdict test_homogeneous(const PositiveElement& x, const MultiDegree& deg);
  std::optional<std::vector<int>> lookup(const std::string& key) const;
  void store(const std::string& key, const std::optional<std::vector<int>>& failing_path);

  std::size_t cap_;
  mutable std::shared_mutex mu_;
  // nullopt: zero in the quotient; otherwise the failing derivation path.
  std::unordered_map<std::string, std::optional<std::vector<int>>> memo_;
};

bool is_zero_in_quotient(const PositiveElement& x);

enum class LemmaVariant { corrected, printed };

// (s1)-(s5) at eps = -1 in I_3 for 1 <= p <= pmax and each rotation
// (i, j, l) = (r, r+1, r-1).  The printed variant drops the (-1)^a sign in
// (s5); it fails from p = 3 on.
Report verify_lemma_formulas(int pmax, SerreQuotientTester& tester,
                             LemmaVariant variant = LemmaVariant::corrected);

// Serre relations for the E-images over every ordered pair i != j, the
// closed form of e_r^{(p)} for p <= 3, and for n = 2 the degree-5 identity
// and the eps role swap.  Pairs are checked in parallel.
Report verify_serre_for_images(const EmbeddingSpec& spec, SerreQuotientTester& tester);

}  // namespace qembed
