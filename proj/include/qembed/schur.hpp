#pragma once

// Root-datum combinatorics: coweights Y_n (zero-sum sequences), weights
// X_n = Z^n / <1>, the maps f (insert a zero after position r), g (contract
// position r+1) and f_d, and the Schur-level compatibility check.

#include <string>
#include <vector>

#include "qembed/embed.hpp"
#include "qembed/repmod.hpp"
#include "qembed/report.hpp"

namespace qembed {

using IntSeq = std::vector<long>;

std::string tuple_text(const IntSeq& s);

struct CoweightY {
  IntSeq entries;

  bool zero_sum() const;
  std::string to_string() const { return tuple_text(entries); }
  bool operator==(const CoweightY&) const = default;
};

// A class in X_n, stored by its representative with entry sum in [0, n-1].
class CosetX {
 public:
  explicit CosetX(IntSeq representative);

  int rank() const { return static_cast<int>(rep_.size()); }
  const IntSeq& representative() const { return rep_; }
  std::string to_string() const { return "coset" + tuple_text(rep_); }
  bool operator==(const CosetX&) const = default;

 private:
  IntSeq rep_;
};

// alpha_i^vee = e_i - e_{i+1} and alpha_i = class of e_i - e_{i+1}, with
// indices 1..n read mod n (alpha_0 = alpha_n).
CoweightY simple_coroot(int n, int i);
CosetX simple_root(int n, int i);

// sum b_i a_i; rejects b with nonzero sum and mismatched ranks.
long pairing(const CoweightY& b, const CosetX& x);

IntSeq y_insert(const IntSeq& b, int r);
Composition y_insert(const Composition& lambda, int r);
CosetX x_contract(const CosetX& x, int r);
// Lifts x to its representative with entry sum d, then applies y_insert.
// Throws std::domain_error when d is not congruent to that sum mod n.
CosetX f_d(const CosetX& x, int d, int r);

// <f(b), x> = <b, g(x)> over basis coweights of Y_n and unit classes of X_{n+1}.
Report pairing_adjointness_check(int n, int r);
// g(f_d(x)) = x and g(x + 1) = g(x) over a box of classes, for d in 0..dmax.
Report root_datum_checks(int n, int r, int dmax);

// For every lambda in Lambda_{n,d} and X in {E_i, F_i}: Phi(X) 1_{f(lambda)}
// on V_{n+1}^{(x)d} equals the transport of X 1_lambda through the module
// embedding (zero off W), plus the idempotent and support checks.
Report verify_schur_compatibility(const EmbeddingSpec& spec, const ModuleContext& src);

}  // namespace qembed
