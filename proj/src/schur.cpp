#include "qembed/schur.hpp"

#include <numeric>

#include "qembed/cartan.hpp"

namespace qembed {

std::string tuple_text(const IntSeq& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + ")";
}

namespace {

long seq_sum(const IntSeq& s) { return std::accumulate(s.begin(), s.end(), 0L); }

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

bool CoweightY::zero_sum() const { return seq_sum(entries) == 0; }

CosetX::CosetX(IntSeq representative) : rep_(std::move(representative)) {
  if (rep_.empty()) throw std::invalid_argument("coset of an empty sequence");
  const long n = static_cast<long>(rep_.size());
  const long k = floor_div(seq_sum(rep_), n);
  for (auto& a : rep_) a -= k;
}

CoweightY simple_coroot(int n, int i) {
  if (n < 2) throw std::invalid_argument("simple_coroot: n must be >= 2");
  CoweightY b{IntSeq(static_cast<std::size_t>(n), 0)};
  const int a = residue(i - 1, n);
  const int c = residue(i, n);
  b.entries[static_cast<std::size_t>(a)] += 1;
  b.entries[static_cast<std::size_t>(c)] -= 1;
  return b;
}

CosetX simple_root(int n, int i) { return CosetX(simple_coroot(n, i).entries); }

long pairing(const CoweightY& b, const CosetX& x) {
  if (!b.zero_sum()) throw std::invalid_argument("pairing: coweight " + b.to_string() + " does not sum to zero");
  if (b.entries.size() != x.representative().size()) throw std::invalid_argument("pairing: ranks differ");
  long s = 0;
  for (std::size_t i = 0; i < b.entries.size(); ++i) s += b.entries[i] * x.representative()[i];
  return s;
}

IntSeq y_insert(const IntSeq& b, int r) {
  if (r < 0 || static_cast<std::size_t>(r) > b.size()) throw std::invalid_argument("y_insert: r out of range");
  IntSeq out(b);
  out.insert(out.begin() + r, 0);
  return out;
}

Composition y_insert(const Composition& lambda, int r) {
  IntSeq s(lambda.parts.begin(), lambda.parts.end());
  s = y_insert(s, r);
  return Composition{std::vector<int>(s.begin(), s.end())};
}

CosetX x_contract(const CosetX& x, int r) {
  const IntSeq& a = x.representative();
  if (r < 0 || r + 1 >= static_cast<int>(a.size())) throw std::invalid_argument("x_contract: r out of range");
  const long pivot = a[static_cast<std::size_t>(r)];
  IntSeq out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i != static_cast<std::size_t>(r)) out.push_back(a[i] - pivot);
  return CosetX(out);
}

CosetX f_d(const CosetX& x, int d, int r) {
  const long n = x.rank();
  const long s = seq_sum(x.representative());
  if (residue(d - s, static_cast<int>(n)) != 0)
    throw std::domain_error(x.to_string() + " is disjoint from Lambda_{" + std::to_string(n) + "," +
                            std::to_string(d) + "} (class disjoint from Lambda_{n,d})");
  IntSeq mu = x.representative();
  const long k = (d - s) / n;
  for (auto& a : mu) a += k;
  return CosetX(y_insert(mu, r));
}

// -------------------------------------------------------- datum checks

Report pairing_adjointness_check(int n, int r) {
  if (n < 2 || r < 0 || r > n - 1) throw std::invalid_argument("pairing_adjointness_check: need n >= 2, 0 <= r <= n-1");
  Report rep;
  rep.suite = "pairing-adjointness";
  rep.params = {{"n", n}, {"r", r}};
  std::optional<std::string> witness;
  std::size_t pairs = 0;
  for (int i = 0; i < n && !witness; ++i) {
    const CoweightY b = simple_coroot(n, i);
    const CoweightY fb{y_insert(b.entries, r)};
    for (int t = 0; t <= n && !witness; ++t) {
      IntSeq unit(static_cast<std::size_t>(n + 1), 0);
      unit[static_cast<std::size_t>(t)] = 1;
      const CosetX x(unit);
      const long lhs = pairing(fb, x);
      const long rhs = pairing(b, x_contract(x, r));
      ++pairs;
      if (lhs != rhs)
        witness = "b = " + b.to_string() + ", x = " + x.to_string() + ": " + std::to_string(lhs) +
                  " != " + std::to_string(rhs);
    }
  }
  rep.add("adjoint", {{"pairs", pairs}}, !witness, witness);

  std::optional<std::string> cartan_witness;
  for (int i = 0; i < n && !cartan_witness; ++i)
    for (int j = 0; j < n && !cartan_witness; ++j) {
      const long p = pairing(simple_coroot(n, i), simple_root(n, j));
      if (p != cartan_entry(n, i, j))
        cartan_witness = "<alpha_" + std::to_string(i) + "^vee, alpha_" + std::to_string(j) + "> = " + std::to_string(p);
    }
  rep.add("cartan-datum", nlohmann::json::object(), !cartan_witness, cartan_witness);
  return rep;
}

Report root_datum_checks(int n, int r, int dmax) {
  if (n < 2 || r < 0 || r > n - 1 || dmax < 0) throw std::invalid_argument("root_datum_checks: bad parameters");
  Report rep;
  rep.suite = "root-datum";
  rep.params = {{"n", n}, {"r", r}, {"dmax", dmax}};
  // Every class whose canonical representative has entries in [-2, 2].
  std::vector<CosetX> classes;
  IntSeq cur(static_cast<std::size_t>(n), -2);
  for (;;) {
    const long s = seq_sum(cur);
    if (s >= 0 && s <= n - 1) classes.emplace_back(cur);
    int j = n - 1;
    while (j >= 0 && cur[static_cast<std::size_t>(j)] == 2) cur[static_cast<std::size_t>(j--)] = -2;
    if (j < 0) break;
    ++cur[static_cast<std::size_t>(j)];
  }

  std::optional<std::string> w1;
  std::size_t n1 = 0;
  for (int d = 0; d <= dmax && !w1; ++d)
    for (const auto& x : classes) {
      if (residue(d - seq_sum(x.representative()), n) != 0) continue;
      ++n1;
      const CosetX back = x_contract(f_d(x, d, r), r);
      if (!(back == x)) {
        w1 = "d = " + std::to_string(d) + ": g(f_d(" + x.to_string() + ")) = " + back.to_string();
        break;
      }
    }
  rep.add("g-f_d-identity", {{"classes", n1}}, !w1, w1);

  std::optional<std::string> w2;
  for (const auto& x : classes) {
    IntSeq lifted = y_insert(x.representative(), r);
    IntSeq shifted = lifted;
    for (auto& a : shifted) a += 1;
    const CosetX g0 = x_contract(CosetX(lifted), r), g1 = x_contract(CosetX(shifted), r);
    if (!(g0 == g1)) {
      w2 = "g" + tuple_text(lifted) + " = " + g0.to_string() + " but g of its 1-shift = " + g1.to_string();
      break;
    }
  }
  rep.add("g-shift-invariance", {{"classes", classes.size()}}, !w2, w2);
  return rep;
}

// ------------------------------------------------ Schur compatibility

Report verify_schur_compatibility(const EmbeddingSpec& spec, const ModuleContext& src) {
  spec.validate();
  if (src.m != spec.n) throw std::invalid_argument("source context must have n residues");
  const ModuleContext target = target_context(spec, src, 0);
  const auto tkeys = target.keys_with_margin(2);
  if (tkeys.empty()) throw MarginError("window too small for the Schur compatibility check");
  const int bad = residue(spec.r + 1, spec.n + 1);

  auto preimage = [&](const TensorKey& k) -> std::optional<TensorKey> {
    TensorKey out;
    for (std::size_t j = 0; j < static_cast<std::size_t>(src.d); ++j) {
      const auto p = sigma_preimage(spec, k[j]);
      if (!p) return std::nullopt;
      out[j] = static_cast<int>(*p);
    }
    return out;
  };

  Report rep;
  rep.suite = "schur-compat";
  rep.params = spec.to_json();
  rep.params["d"] = src.d;
  rep.params["window"] = {src.lo, src.hi};

  for (const Composition& lambda : compositions(spec.n, src.d)) {
    const Composition flam = y_insert(lambda, spec.r);

    // Weight-f(lambda) tensors avoid residue r+1.
    std::optional<std::string> sw;
    for (const auto& k : target.keys_with_margin(0)) {
      if (!(weight_of_key(target, k) == flam)) continue;
      for (std::size_t j = 0; j < static_cast<std::size_t>(target.d); ++j)
        if (target.residue(k[j]) == bad) sw = target.key_text(k) + " has weight " + flam.to_string();
      if (sw) break;
    }
    rep.add("support", {{"lambda", lambda.to_string()}}, !sw, sw);

    // 1_lambda transports to 1_{f(lambda)}.
    const KeyAction idem_lhs = [&](const TensorKey& k) {
      return project_weight(target, flam, TensorVector::basis(target, k));
    };
    const KeyAction idem_rhs = [&](const TensorKey& k) {
      const auto p = preimage(k);
      if (!p) return TensorVector(target);
      return embed_vector(spec, project_weight(src, lambda, TensorVector::basis(src, *p)), target);
    };
    const EqualityResult ir = compare_on_keys(target, tkeys, idem_lhs, idem_rhs);
    rep.add("idempotent", {{"lambda", lambda.to_string()}, {"keys", ir.keys_checked}}, ir.equal,
            ir.equal ? std::nullopt : std::optional<std::string>(ir.witness(target)));

    for (int i = 0; i < spec.n; ++i) {
      for (GeneratorSymbol s : {GeneratorSymbol::E(i), GeneratorSymbol::F(i)}) {
        const AlgebraExpression x = AlgebraExpression::generator(spec.n, s);
        const AlgebraExpression img = image_generator(spec, s);
        const KeyAction lhs = [&](const TensorKey& k) {
          return act_expression(target, img, project_weight(target, flam, TensorVector::basis(target, k)));
        };
        const KeyAction rhs = [&](const TensorKey& k) {
          const auto p = preimage(k);
          if (!p) return TensorVector(target);
          return embed_vector(spec, act_expression(src, x, project_weight(src, lambda, TensorVector::basis(src, *p))),
                              target);
        };
        const EqualityResult r = compare_on_keys(target, tkeys, lhs, rhs);
        rep.add("transport", {{"lambda", lambda.to_string()}, {"gen", s.to_string()}, {"keys", r.keys_checked}},
                r.equal, r.equal ? std::nullopt : std::optional<std::string>(r.witness(target)));
      }
    }
  }
  return rep;
}

}  // namespace qembed
