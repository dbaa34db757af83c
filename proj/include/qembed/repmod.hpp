#pragma once

// The level-zero module V_m (basis u_k, k in Z) and its tensor powers,
// truncated to a window of indices.  Generators act through the
// left-iterated coproduct
//   E_i -> sum_j K_i^{(j-1)} (x) E_i (x) 1^{(d-j)}
//   F_i -> sum_j 1^{(j-1)} (x) F_i (x) (K_i^{-1})^{(d-j)}
// with E_i u_k = [k = i+1] u_{k-1}, F_i u_k = [k = i] u_{k+1} and
// K_i u_k = v^{[k = i] - [k = i+1]} u_k (congruences mod m).
//
// Every letter moves one tensor index by at most one step, so an expression
// whose words have length <= L acts exactly on any key at distance >= L from
// both window ends.  Evaluations outside that margin are rejected.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qembed/expr.hpp"
#include "qembed/report.hpp"

namespace qembed {

inline constexpr std::size_t kMaxTensorDegree = 8;

struct TensorKey {
  std::array<std::int32_t, kMaxTensorDegree> idx{};

  auto operator<=>(const TensorKey&) const = default;
  std::int32_t& operator[](std::size_t j) { return idx[j]; }
  std::int32_t operator[](std::size_t j) const { return idx[j]; }
};

TensorKey make_key(std::initializer_list<int> ks);

class MarginError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct ModuleContext {
  int m = 2;   // number of residues
  int d = 1;   // tensor exponent
  int lo = -8;
  int hi = 8;

  ModuleContext() = default;
  ModuleContext(int m, int d, int lo, int hi);

  int residue(long k) const;
  bool contains(const TensorKey& key) const { return has_margin(key, 0); }
  bool has_margin(const TensorKey& key, int margin) const;
  // All keys in [lo + margin, hi - margin]^d in lexicographic order.
  std::vector<TensorKey> keys_with_margin(int margin) const;
  std::string key_text(const TensorKey& key) const;
  bool operator==(const ModuleContext&) const = default;
};

class TensorVector {
 public:
  using EntryMap = std::map<TensorKey, RationalFunction>;

  explicit TensorVector(const ModuleContext& ctx) : ctx_(ctx) {}
  static TensorVector basis(const ModuleContext& ctx, const TensorKey& key);

  const ModuleContext& context() const { return ctx_; }
  const EntryMap& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  RationalFunction coefficient(const TensorKey& key) const;

  void add_term(const TensorKey& key, const RationalFunction& c);
  TensorVector& operator+=(const TensorVector& o);
  TensorVector& operator-=(const TensorVector& o);
  TensorVector& operator*=(const RationalFunction& c);
  friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
  friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
  friend TensorVector operator*(const RationalFunction& c, TensorVector a) { return a *= c; }
  bool operator==(const TensorVector& o) const { return ctx_.d == o.ctx_.d && entries_ == o.entries_; }

  // `coeff * u[k1,...,kd]` summands.
  std::string to_string() const;
  static TensorVector parse(std::string_view text, const ModuleContext& ctx);

 private:
  ModuleContext ctx_;
  EntryMap entries_;
};

TensorVector act_generator(const ModuleContext& ctx, GeneratorSymbol sym, const TensorKey& key);
TensorVector act_expression(const ModuleContext& ctx, const AlgebraExpression& x, const TensorVector& vec);

// A sum of pure tensors of expressions, acting factor by factor:
//   (x_1 (x) ... (x) x_d) u_{k_1} (x) ... (x) u_{k_d} = x_1 u_{k_1} (x) ... (x) x_d u_{k_d}.
struct TensorOperatorTerm {
  RationalFunction coeff = 1;
  std::vector<AlgebraExpression> factors;
};
using TensorOperator = std::vector<TensorOperatorTerm>;

// Composition (x_1 (x) ... )(y_1 (x) ...) = x_1 y_1 (x) ... ; same arity required.
TensorOperator compose(const TensorOperator& a, const TensorOperator& b);
std::size_t word_length_bound(const TensorOperator& op);
TensorVector act_tensor_operator(const ModuleContext& ctx, const TensorOperator& op, const TensorVector& vec);

enum class CoproductOrder { left, right };
// Delta applied to a single expression (two tensor factors).
TensorOperator coproduct(const AlgebraExpression& x);
// The (d-1)-fold iterated coproduct of x, iterating on the first (left) or
// last (right) tensor factor.
TensorOperator iterated_coproduct(const AlgebraExpression& x, int d, CoproductOrder order);

// ------------------------------------------------------- operator equality

struct EqualityResult {
  bool equal = true;
  std::size_t keys_checked = 0;
  std::optional<TensorKey> key;   // first differing key, in key order
  std::optional<TensorVector> lhs;
  std::optional<TensorVector> rhs;

  std::string witness(const ModuleContext& ctx) const;
};

// Basis-key action of an operator; must not throw for keys it was sized for.
using KeyAction = std::function<TensorVector(const TensorKey&)>;

// Compares two operators on `keys`.  The serial version is the reference
// implementation; the OpenMP version must agree with it exactly, including
// which key is reported first.
EqualityResult compare_on_keys_serial(const ModuleContext& ctx, const std::vector<TensorKey>& keys,
                                      const KeyAction& lhs, const KeyAction& rhs);
EqualityResult compare_on_keys(const ModuleContext& ctx, const std::vector<TensorKey>& keys, const KeyAction& lhs,
                               const KeyAction& rhs);

// TRUE iff A and B act identically on every basis key whose margin covers
// both word-length bounds.  Throws MarginError when no key is safe.
EqualityResult operators_equal_on_window(const ModuleContext& ctx, const AlgebraExpression& a,
                                         const AlgebraExpression& b);
EqualityResult operators_equal_on_window_serial(const ModuleContext& ctx, const AlgebraExpression& a,
                                                const AlgebraExpression& b);
EqualityResult tensor_operators_equal_on_window(const ModuleContext& ctx, const TensorOperator& a,
                                                const TensorOperator& b);

// --------------------------------------------------------------- weights

struct Composition {
  std::vector<int> parts;
  int degree() const;
  std::string to_string() const;
  auto operator<=>(const Composition&) const = default;
};

// All compositions of d into n nonnegative parts, lexicographically descending.
std::vector<Composition> compositions(int n, int d);

// a_i = #{ j : k_j = i mod m } for i = 1..m (a_m counts k_j = 0 mod m).
Composition weight_of_key(const ModuleContext& ctx, const TensorKey& key);
TensorVector project_weight(const ModuleContext& ctx, const Composition& lambda, const TensorVector& vec);

// ------------------------------------------------------ relation suites

// E_i -> E_i, F_i -> F_i, K_i^{+-1} -> K_i^{+-1} on I_n.
GeneratorImages identity_realization(int n);

// Checks R1-R5 for the images of the Chevalley generators of I_n, acting on
// ctx (whose alphabet may be larger than n).
Report relation_suite(const ModuleContext& ctx, const GeneratorImages& realization, int rank);

}  // namespace qembed
