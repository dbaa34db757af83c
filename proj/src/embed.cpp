#include "qembed/embed.hpp"

#include "qembed/cartan.hpp"

namespace qembed {

std::string mutation_name(Mutation m) { return m == Mutation::sign_eps ? "sign-eps" : "none"; }

Mutation parse_mutation(const std::string& s) {
  if (s == "none" || s.empty()) return Mutation::none;
  if (s == "sign-eps") return Mutation::sign_eps;
  throw std::invalid_argument("unknown mutation '" + s + "' (expected sign-eps)");
}

void EmbeddingSpec::validate() const {
  if (n < 2 || n > 254) throw std::invalid_argument("n must satisfy 2 <= n <= 254, got " + std::to_string(n));
  if (r < 0 || r > n - 1)
    throw std::invalid_argument("r must lie in [0, n-1] = [0, " + std::to_string(n - 1) + "], got " + std::to_string(r));
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1, got " + std::to_string(eps));
}

nlohmann::json EmbeddingSpec::to_json() const {
  nlohmann::json j = {{"n", n}, {"r", r}, {"eps", eps}};
  if (mutation != Mutation::none) j["mutation"] = mutation_name(mutation);
  return j;
}

// ------------------------------------------------------------- images

namespace {

AlgebraExpression letter(int m, GeneratorSymbol s) { return AlgebraExpression::generator(m, s); }

int shift_index(const EmbeddingSpec& spec, int i) { return i < spec.r ? i : i + 1; }

}  // namespace

AlgebraExpression image_generator(const EmbeddingSpec& spec, GeneratorSymbol sym) {
  spec.validate();
  if (sym.index >= spec.n)
    throw std::out_of_range("generator " + sym.to_string() + " outside I_" + std::to_string(spec.n));
  const int m = spec.n + 1;
  const int i = sym.index;
  const int r = spec.r;
  if (i != r) {
    const int t = shift_index(spec, i);
    switch (sym.kind) {
      case GenKind::E: return letter(m, GeneratorSymbol::E(t));
      case GenKind::F: return letter(m, GeneratorSymbol::F(t));
      case GenKind::K: return letter(m, GeneratorSymbol::K(t, sym.kexp));
    }
  }
  switch (sym.kind) {
    case GenKind::E: {
      const int e = spec.mutation == Mutation::sign_eps ? -spec.eps : spec.eps;
      const auto a = letter(m, GeneratorSymbol::E(r)), b = letter(m, GeneratorSymbol::E(r + 1));
      return a * b - RationalFunction::v_power(e) * (b * a);
    }
    case GenKind::F: {
      const auto a = letter(m, GeneratorSymbol::F(r)), b = letter(m, GeneratorSymbol::F(r + 1));
      return b * a - RationalFunction::v_power(-spec.eps) * (a * b);
    }
    case GenKind::K:
      if (sym.kexp > 0) return letter(m, GeneratorSymbol::K(r)) * letter(m, GeneratorSymbol::K(r + 1));
      return letter(m, GeneratorSymbol::K(r + 1, -1)) * letter(m, GeneratorSymbol::K(r, -1));
  }
  return AlgebraExpression(m);
}

GeneratorImages image_realization(const EmbeddingSpec& spec) {
  GeneratorImages img;
  for (int i = 0; i < spec.n; ++i)
    for (GeneratorSymbol s : {GeneratorSymbol::E(i), GeneratorSymbol::F(i), GeneratorSymbol::K(i, 1), GeneratorSymbol::K(i, -1)})
      img.emplace(s, image_generator(spec, s));
  return img;
}

AlgebraExpression image_divided_power(const EmbeddingSpec& spec, Side side, int p) {
  spec.validate();
  if (p < 0) throw std::invalid_argument("image_divided_power: p must be >= 0");
  const int m = spec.n + 1;
  const int r = spec.r;
  const bool e_side = side == Side::E;
  const auto outer = letter(m, e_side ? GeneratorSymbol::E(r + 1) : GeneratorSymbol::F(r));
  const auto inner = letter(m, e_side ? GeneratorSymbol::E(r) : GeneratorSymbol::F(r + 1));
  const int e = e_side ? spec.eps : -spec.eps;
  AlgebraExpression sum(m);
  const AlgebraExpression mid = divided_power(inner, p);
  for (int j = 0; j <= p; ++j) {
    const RationalFunction c = RationalFunction(j % 2 ? -1 : 1).times_v_power(e * j);
    sum += c * (divided_power(outer, j) * mid * divided_power(outer, p - j));
  }
  return sum;
}

// ------------------------------------------------------- index maps

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace

long sigma_index(const EmbeddingSpec& spec, long k) {
  const long n = spec.n;
  const long s = residue(k - 1, spec.n) + 1;
  const long q = (k - s) / n;
  return s <= spec.r ? q * (n + 1) + s : q * (n + 1) + s + 1;
}

std::optional<long> sigma_preimage(const EmbeddingSpec& spec, long k) {
  const long n = spec.n;
  const long s = residue(k - 1, spec.n + 1) + 1;
  const long q = (k - s) / (n + 1);
  if (s == spec.r + 1) return std::nullopt;
  return s <= spec.r ? q * n + s : q * n + s - 1;
}

long sigma_index_floor_ceil(const EmbeddingSpec& spec, long k) {
  const int kb = residue(k, spec.n);
  return kb < spec.r ? k + floor_div(k, spec.n) : k + ceil_div(k, spec.n);
}

ModuleContext target_context(const EmbeddingSpec& spec, const ModuleContext& src, int margin) {
  return ModuleContext(spec.n + 1, src.d, static_cast<int>(sigma_index(spec, src.lo)) - margin,
                       static_cast<int>(sigma_index(spec, src.hi)) + margin);
}

namespace {

TensorKey embed_key(const EmbeddingSpec& spec, const TensorKey& key, int d) {
  TensorKey out;
  for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) out[j] = static_cast<int>(sigma_index(spec, key[j]));
  return out;
}

bool in_image(const EmbeddingSpec& spec, const ModuleContext& target, const TensorKey& key) {
  for (std::size_t j = 0; j < static_cast<std::size_t>(target.d); ++j)
    if (target.residue(key[j]) == residue(spec.r + 1, spec.n + 1)) return false;
  return true;
}

std::optional<std::string> witness_of(const EqualityResult& r, const ModuleContext& ctx) {
  if (r.equal) return std::nullopt;
  return r.witness(ctx);
}

}  // namespace

TensorVector embed_vector(const EmbeddingSpec& spec, const TensorVector& vec, const ModuleContext& target) {
  if (target.m != spec.n + 1 || target.d != vec.context().d)
    throw std::invalid_argument("embed_vector: target context does not match the embedding");
  TensorVector out(target);
  for (const auto& [k, c] : vec.entries()) out.add_term(embed_key(spec, k, target.d), c);
  return out;
}

// ------------------------------------------------------ intertwining

Report verify_intertwining(const EmbeddingSpec& spec, const ModuleContext& src) {
  spec.validate();
  if (src.m != spec.n) throw std::invalid_argument("source context must have n residues");
  const ModuleContext target = target_context(spec, src, 3);
  const auto keys = src.keys_with_margin(1);
  if (keys.empty()) throw MarginError("source window too small for generator actions");

  Report rep;
  rep.suite = "intertwine";
  rep.params = spec.to_json();
  rep.params["d"] = src.d;
  rep.params["window"] = {src.lo, src.hi};

  for (int i = 0; i < spec.n; ++i) {
    for (GeneratorSymbol s : {GeneratorSymbol::E(i), GeneratorSymbol::F(i), GeneratorSymbol::K(i, 1), GeneratorSymbol::K(i, -1)}) {
      const AlgebraExpression x = AlgebraExpression::generator(spec.n, s);
      const AlgebraExpression img = image_generator(spec, s);
      const KeyAction lhs = [&](const TensorKey& k) {
        return embed_vector(spec, act_expression(src, x, TensorVector::basis(src, k)), target);
      };
      const KeyAction rhs = [&](const TensorKey& k) {
        return act_expression(target, img, TensorVector::basis(target, embed_key(spec, k, src.d)));
      };
      const EqualityResult r = compare_on_keys(src, keys, lhs, rhs);
      rep.add("intertwine", {{"gen", s.to_string()}, {"keys", r.keys_checked}}, r.equal,
              r.equal ? std::nullopt
                      : std::optional<std::string>("source " + src.key_text(*r.key) + ": embedded = " +
                                                   r.lhs->to_string() + "; image action = " + r.rhs->to_string()));

      // The image action never leaves W.
      const KeyAction outside = [&](const TensorKey& k) {
        TensorVector y = act_expression(target, img, TensorVector::basis(target, embed_key(spec, k, src.d)));
        TensorVector off(target);
        for (const auto& [tk, c] : y.entries())
          if (!in_image(spec, target, tk)) off.add_term(tk, c);
        return off;
      };
      const KeyAction zero = [&](const TensorKey&) { return TensorVector(target); };
      const EqualityResult w = compare_on_keys(src, keys, outside, zero);
      rep.add("W-stable", {{"gen", s.to_string()}, {"keys", w.keys_checked}}, w.equal,
              w.equal ? std::nullopt
                      : std::optional<std::string>("source " + src.key_text(*w.key) +
                                                   ": component outside W = " + w.lhs->to_string()));
    }
  }

  if (src.d >= 2) {
    // The last two summands of Delta(e_r) and Delta(f_r), without their
    // scalar coefficients, vanish on W (x) W.
    const int m = spec.n + 1, r = spec.r;
    const ModuleContext src2(spec.n, 2, src.lo, src.hi);
    const ModuleContext tgt2 = target_context(spec, src2, 3);
    auto g = [m](GeneratorSymbol s) { return AlgebraExpression::generator(m, s); };
    using G = GeneratorSymbol;
    const std::vector<std::pair<std::string, TensorOperator>> extras = {
        {"Delta(e_r) term 3", {{1, {g(G::E(r + 1)) * g(G::K(r)), g(G::E(r))}}}},
        {"Delta(e_r) term 4", {{1, {g(G::K(r + 1)) * g(G::E(r)), g(G::E(r + 1))}}}},
        {"Delta(f_r) term 3", {{1, {g(G::F(r)), g(G::K(r, -1)) * g(G::F(r + 1))}}}},
        {"Delta(f_r) term 4", {{1, {g(G::F(r + 1)), g(G::F(r)) * g(G::K(r + 1, -1))}}}},
    };
    const auto keys2 = src2.keys_with_margin(1);
    for (const auto& [name, op] : extras) {
      const KeyAction lhs = [&](const TensorKey& k) {
        return act_tensor_operator(tgt2, op, TensorVector::basis(tgt2, embed_key(spec, k, 2)));
      };
      const KeyAction zero = [&](const TensorKey&) { return TensorVector(tgt2); };
      const EqualityResult z = compare_on_keys(src2, keys2, lhs, zero);
      rep.add("extra-terms-vanish", {{"term", name}, {"keys", z.keys_checked}}, z.equal,
              z.equal ? std::nullopt
                      : std::optional<std::string>("source " + src2.key_text(*z.key) + ": " + z.lhs->to_string()));
    }
  }
  return rep;
}

// ---------------------------------------------------- coproduct identity

Report verify_coproduct_identity(const EmbeddingSpec& spec, int lo, int hi) {
  spec.validate();
  const int m = spec.n + 1, r = spec.r, eps = spec.eps;
  const ModuleContext ctx(m, 2, lo, hi);
  auto g = [m](GeneratorSymbol s) { return AlgebraExpression::generator(m, s); };
  using G = GeneratorSymbol;
  const auto one = AlgebraExpression::unit(m);
  const RationalFunction v = RationalFunction::v_power(1);
  const RationalFunction ve = RationalFunction::v_power(eps);

  const auto e_r = image_generator(spec, G::E(r));
  const auto f_r = image_generator(spec, G::F(r));
  const auto k_r = image_generator(spec, G::K(r, 1));
  const auto k_r_inv = image_generator(spec, G::K(r, -1));

  const TensorOperator rhs_e = {
      {1, {e_r, one}},
      {1, {k_r, e_r}},
      {v.inverse() - ve, {g(G::E(r + 1)) * g(G::K(r)), g(G::E(r))}},
      {v - ve, {g(G::K(r + 1)) * g(G::E(r)), g(G::E(r + 1))}},
  };
  const TensorOperator rhs_f = {
      {1, {f_r, k_r_inv}},
      {1, {one, f_r}},
      {v - ve.inverse(), {g(G::F(r)), g(G::K(r, -1)) * g(G::F(r + 1))}},
      {v.inverse() - ve.inverse(), {g(G::F(r + 1)), g(G::F(r)) * g(G::K(r + 1, -1))}},
  };

  Report rep;
  rep.suite = "coproduct";
  rep.params = spec.to_json();
  rep.params["window"] = {lo, hi};
  for (const auto& [tag, lhs, rhs] : {std::tuple{"Delta(e_r)", coproduct(e_r), rhs_e},
                                      std::tuple{"Delta(f_r)", coproduct(f_r), rhs_f}}) {
    const EqualityResult res = tensor_operators_equal_on_window(ctx, lhs, rhs);
    rep.add(tag, {{"keys", res.keys_checked}}, res.equal, witness_of(res, ctx));
  }
  return rep;
}

// ------------------------------------------------------------ gl variant

AlgebraExpression gl_image_l(const EmbeddingSpec& spec, int i) {
  spec.validate();
  if (i < 1 || i > spec.n + 1)
    throw std::out_of_range("l_i needs 1 <= i <= n, got " + std::to_string(i));
  if (i == spec.n + 1) i = 1;
  const int m = spec.n + 1;
  AlgebraExpression w = AlgebraExpression::unit(m);
  if (i <= spec.r) {
    for (int t = i; t <= spec.r; ++t) w = w * AlgebraExpression::generator(m, GeneratorSymbol::K(residue(t, m)));
  } else {
    for (int t = spec.r + 1; t <= i; ++t)
      w = w * AlgebraExpression::generator(m, GeneratorSymbol::K(residue(t, m), -1));
  }
  return w;
}

AlgebraExpression gl_image_l_inverse(const EmbeddingSpec& spec, int i) { return inverse_k_word(gl_image_l(spec, i)); }

Report verify_gl_suite(const EmbeddingSpec& spec, const ModuleContext& target) {
  spec.validate();
  const int n = spec.n, m = n + 1;
  if (target.m != m) throw std::invalid_argument("gl suite acts on V_{n+1}");
  const RationalFunction v = RationalFunction::v_power(1);
  auto L = [&](int i) { return gl_image_l(spec, i); };
  auto Li = [&](int i) { return gl_image_l_inverse(spec, i); };
  // L-indices live in 1..n with L_0 = L_n.
  auto lidx = [n](int i) { return residue(i - 1, n) + 1; };
  auto delta = [n](int a, int b) { return residue(a - b, n) == 0 ? 1 : 0; };

  Report rep;
  rep.suite = "gl-variant";
  rep.params = spec.to_json();
  rep.params["d"] = target.d;
  rep.params["window"] = {target.lo, target.hi};
  auto check = [&](const std::string& tag, nlohmann::json params, const AlgebraExpression& a,
                   const AlgebraExpression& b) {
    const EqualityResult r = operators_equal_on_window(target, a, b);
    params["keys"] = r.keys_checked;
    rep.add(tag, std::move(params), r.equal, witness_of(r, target));
  };

  const auto one = AlgebraExpression::unit(m);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) check("gl-LL", {{"i", i}, {"j", j}, {"form", "LiLj=LjLi"}}, L(i) * L(j), L(j) * L(i));
    check("gl-LL", {{"i", i}, {"form", "LiLi^-1=1"}}, L(i) * Li(i), one);
    check("gl-LL", {{"i", i}, {"form", "Li^-1Li=1"}}, Li(i) * L(i), one);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int ex = delta(i, j) - delta(i - 1, j);
      const auto e = image_generator(spec, GeneratorSymbol::E(j));
      const auto f = image_generator(spec, GeneratorSymbol::F(j));
      check("gl-LE", {{"i", i}, {"j", j}}, L(i) * e, RationalFunction::v_power(ex) * (e * L(i)));
      check("gl-LF", {{"i", i}, {"j", j}}, L(i) * f, RationalFunction::v_power(-ex) * (f * L(i)));
    }
  }
  const RationalFunction qd = (v - v.inverse()).inverse();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto e = image_generator(spec, GeneratorSymbol::E(i));
      const auto f = image_generator(spec, GeneratorSymbol::F(j));
      AlgebraExpression rhs(m);
      if (i == j) {
        const int a = lidx(i), b = lidx(i + 1);
        rhs = qd * (L(a) * Li(b) - Li(a) * L(b));
      }
      check("gl-EF", {{"i", i}, {"j", j}}, e * f - f * e, rhs);
    }
  }
  for (int i = 0; i < n; ++i) {
    check("k=l*l^-1", {{"i", i}}, image_generator(spec, GeneratorSymbol::K(i)), L(lidx(i)) * Li(lidx(i + 1)));
  }
  AlgebraExpression central = one;
  for (int i = 0; i < m; ++i) central = central * AlgebraExpression::generator(m, GeneratorSymbol::K(i));
  check("level-1", nlohmann::json::object(), central, one);
  return rep;
}

}  // namespace qembed
