#pragma once

// The embedding of quantum affine sl_n into sl_{n+1} (and its gl_n variant at
// level one): generator images, the module embedding V_n -> V_{n+1}, and the
// operator-level verification suites.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qembed/expr.hpp"
#include "qembed/repmod.hpp"
#include "qembed/report.hpp"

namespace qembed {

// Deliberate defects used to show that the suites can fail.
enum class Mutation { none, sign_eps };

std::string mutation_name(Mutation m);
Mutation parse_mutation(const std::string& s);

struct EmbeddingSpec {
  int n = 2;
  int r = 0;
  int eps = -1;
  Mutation mutation = Mutation::none;

  // Throws std::invalid_argument unless n >= 2, 0 <= r <= n-1, eps = +-1.
  void validate() const;
  int target_rank() const { return n + 1; }
  nlohmann::json to_json() const;
};

// e_i, f_i, k_i^{+-1} as expressions over I_{n+1}.
AlgebraExpression image_generator(const EmbeddingSpec& spec, GeneratorSymbol sym);
GeneratorImages image_realization(const EmbeddingSpec& spec);

enum class Side { E, F };
// The closed form of e_r^{(p)} (side E) or f_r^{(p)} (side F).
AlgebraExpression image_divided_power(const EmbeddingSpec& spec, Side side, int p);

// Index map of the module embedding u_k -> u'_{sigma(k)}: k = qn + s with
// s in 1..n maps to q(n+1) + s for s <= r and to q(n+1) + s + 1 otherwise.
long sigma_index(const EmbeddingSpec& spec, long k);
std::optional<long> sigma_preimage(const EmbeddingSpec& spec, long k);
// The floor/ceiling rule keyed on k mod n in {0..r-1} / {r..n-1}.  It does
// not intertwine the actions for r >= 1; kept for the falsification tests.
long sigma_index_floor_ceil(const EmbeddingSpec& spec, long k);

// Target window [sigma(lo) - margin, sigma(hi) + margin] over n+1 residues.
ModuleContext target_context(const EmbeddingSpec& spec, const ModuleContext& src, int margin);
// Componentwise sigma_index on every key; throws MarginError on overflow.
TensorVector embed_vector(const EmbeddingSpec& spec, const TensorVector& vec, const ModuleContext& target);

// embed(X u_K) = Phi(X) embed(u_K) for X in {E_i, F_i, K_i^{+-1}} over the
// safe keys of src, W-stability, and (d >= 2) vanishing of the two extra
// coproduct terms on W (x) W.
Report verify_intertwining(const EmbeddingSpec& spec, const ModuleContext& src);

// Delta(e_r) and Delta(f_r) against their four-term expansions on
// V_{n+1} (x) V_{n+1} over [lo, hi]^2.
Report verify_coproduct_identity(const EmbeddingSpec& spec, int lo, int hi);

// l_i for 1 <= i <= n; l_{n+1} is read as l_1.
AlgebraExpression gl_image_l(const EmbeddingSpec& spec, int i);
AlgebraExpression gl_image_l_inverse(const EmbeddingSpec& spec, int i);
// The gl relation families on V_{n+1}^{(x)d}, k_i = l_i l_{i+1}^{-1}, and the
// level-one condition prod_i K_i = 1.
Report verify_gl_suite(const EmbeddingSpec& spec, const ModuleContext& target);

// ----------------------------------------------------- classical oracle

class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int size);
  static RationalMatrix from_rows(const std::vector<std::vector<mpq_class>>& rows);

  int size() const { return n_; }
  mpq_class& at(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const mpq_class& at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  mpq_class trace() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  bool operator==(const RationalMatrix& o) const = default;
  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<mpq_class> a_;
};

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

enum class ClassicalVariant { sl, gl };
// Inserts a zero row and column after position r (0 <= r <= n); the gl
// variant puts -trace(block) on the new diagonal entry.
RationalMatrix classical_embed(const RationalMatrix& block, int r, ClassicalVariant variant);

// Bracket preservation on `samples` random integer pairs: traceless inputs
// for the sl variant, arbitrary inputs for gl, every r in 0..n.
Report verify_classical_oracle(int n, int samples, std::uint64_t seed);

}  // namespace qembed
