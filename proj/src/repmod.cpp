#include "qembed/repmod.hpp"

#include <algorithm>
#include <sstream>

#include "qembed/cartan.hpp"
#include "qembed/detail/lexer.hpp"

namespace qembed {

TensorKey make_key(std::initializer_list<int> ks) {
  if (ks.size() > kMaxTensorDegree) throw std::invalid_argument("tensor degree exceeds kMaxTensorDegree");
  TensorKey k;
  std::size_t j = 0;
  for (int x : ks) k[j++] = x;
  return k;
}

// ------------------------------------------------------------ context

ModuleContext::ModuleContext(int m_, int d_, int lo_, int hi_) : m(m_), d(d_), lo(lo_), hi(hi_) {
  if (m < 2) throw std::invalid_argument("module needs at least two residues");
  if (d < 1 || static_cast<std::size_t>(d) > kMaxTensorDegree)
    throw std::invalid_argument("tensor exponent must lie in [1, " + std::to_string(kMaxTensorDegree) + "]");
  if (lo >= hi) throw std::invalid_argument("window must satisfy lo < hi");
}

int ModuleContext::residue(long k) const { return qembed::residue(k, m); }

bool ModuleContext::has_margin(const TensorKey& key, int margin) const {
  for (int j = 0; j < d; ++j)
    if (key[static_cast<std::size_t>(j)] < lo + margin || key[static_cast<std::size_t>(j)] > hi - margin) return false;
  return true;
}

std::vector<TensorKey> ModuleContext::keys_with_margin(int margin) const {
  std::vector<TensorKey> out;
  const int a = lo + margin;
  const int b = hi - margin;
  if (a > b) return out;
  TensorKey k;
  for (int j = 0; j < d; ++j) k[static_cast<std::size_t>(j)] = a;
  for (;;) {
    out.push_back(k);
    int j = d - 1;
    while (j >= 0 && k[static_cast<std::size_t>(j)] == b) {
      k[static_cast<std::size_t>(j)] = a;
      --j;
    }
    if (j < 0) break;
    ++k[static_cast<std::size_t>(j)];
  }
  return out;
}

std::string ModuleContext::key_text(const TensorKey& key) const {
  std::string s = "u[";
  for (int j = 0; j < d; ++j) {
    if (j) s += ',';
    s += std::to_string(key[static_cast<std::size_t>(j)]);
  }
  return s + "]";
}

// ------------------------------------------------------------- vectors

TensorVector TensorVector::basis(const ModuleContext& ctx, const TensorKey& key) {
  TensorVector v(ctx);
  v.add_term(key, 1);
  return v;
}

RationalFunction TensorVector::coefficient(const TensorKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? RationalFunction() : it->second;
}

void TensorVector::add_term(const TensorKey& key, const RationalFunction& c) {
  if (c.is_zero()) return;
  if (!ctx_.contains(key)) throw MarginError("key " + ctx_.key_text(key) + " lies outside the window");
  auto [it, inserted] = entries_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

TensorVector& TensorVector::operator+=(const TensorVector& o) {
  for (const auto& [k, c] : o.entries_) add_term(k, c);
  return *this;
}

TensorVector& TensorVector::operator-=(const TensorVector& o) {
  for (const auto& [k, c] : o.entries_) add_term(k, -c);
  return *this;
}

TensorVector& TensorVector::operator*=(const RationalFunction& c) {
  if (c.is_zero()) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, x] : entries_) x *= c;
  return *this;
}

std::string TensorVector::to_string() const {
  if (entries_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : entries_) {
    RationalFunction mag = c;
    bool negative = false;
    if (c.is_monomial() && c.numerator()[0] < 0) {
      negative = true;
      mag = -c;
    }
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    first = false;
    if (!mag.is_one()) os << (mag.is_monomial() ? mag.to_string() : "(" + mag.to_string() + ")") << " * ";
    os << ctx_.key_text(k);
  }
  return os.str();
}

TensorVector TensorVector::parse(std::string_view text, const ModuleContext& ctx) {
  using detail::Tok;
  detail::Lexer lex(text);
  TensorVector out(ctx);
  if (lex.at(Tok::Int) && lex.peek().text == "0" && lex.at(Tok::End, 1)) return out;
  bool first = true;
  while (first || lex.at(Tok::Plus) || lex.at(Tok::Minus)) {
    bool neg = false;
    if (lex.accept(Tok::Minus)) neg = true;
    else lex.accept(Tok::Plus);
    first = false;
    RationalFunction c(1);
    while (!lex.at_ident("u")) {
      c *= detail::parse_scalar_power(lex);
      if (lex.accept(Tok::Star)) continue;
      if (lex.at(Tok::Slash)) {
        const std::size_t pos = lex.next().pos;
        const RationalFunction den = detail::parse_scalar_power(lex);
        if (den.is_zero()) throw ParseError(pos, "division by zero");
        c /= den;
        lex.expect(Tok::Star, "'*' before basis vector");
        continue;
      }
      lex.fail("expected '*' before basis vector");
    }
    lex.next();
    const std::size_t key_pos = lex.expect(Tok::LBracket, "'['").pos;
    TensorKey key;
    int j = 0;
    do {
      if (j >= ctx.d) throw ParseError(key_pos, "basis vector has more than d = " + std::to_string(ctx.d) + " indices");
      key[static_cast<std::size_t>(j++)] = detail::parse_signed_int(lex);
    } while (lex.accept(Tok::Comma));
    lex.expect(Tok::RBracket, "']'");
    if (j != ctx.d) throw ParseError(key_pos, "basis vector needs exactly d = " + std::to_string(ctx.d) + " indices");
    if (!ctx.contains(key)) throw ParseError(key_pos, "basis vector " + ctx.key_text(key) + " lies outside the window");
    out.add_term(key, neg ? -c : c);
  }
  if (!lex.at(Tok::End)) lex.fail("unexpected trailing input");
  return out;
}

// ------------------------------------------------------------- actions

namespace {

// One path through a word: every path contributes mult * v^exp.
struct Path {
  TensorKey key;
  int exp = 0;
  std::int64_t mult = 1;
};

int weight_step(int r, int i, int ip1) { return (r == i ? 1 : 0) - (r == ip1 ? 1 : 0); }

void apply_letter(const ModuleContext& ctx, GeneratorSymbol s, const Path& p, std::vector<Path>& out) {
  const int i = s.index;
  const int ip1 = ctx.residue(i + 1);
  const auto d = static_cast<std::size_t>(ctx.d);
  switch (s.kind) {
    case GenKind::K: {
      int w = 0;
      for (std::size_t j = 0; j < d; ++j) w += weight_step(ctx.residue(p.key[j]), i, ip1);
      out.push_back({p.key, p.exp + s.kexp * w, p.mult});
      break;
    }
    case GenKind::E: {
      int prefix = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const int r = ctx.residue(p.key[j]);
        if (r == ip1) {
          Path q{p.key, p.exp + prefix, p.mult};
          q.key[j] -= 1;
          out.push_back(q);
        }
        prefix += weight_step(r, i, ip1);
      }
      break;
    }
    case GenKind::F: {
      int suffix = 0;
      for (std::size_t jj = d; jj-- > 0;) {
        const int r = ctx.residue(p.key[jj]);
        if (r == i) {
          Path q{p.key, p.exp - suffix, p.mult};
          q.key[jj] += 1;
          out.push_back(q);
        }
        suffix += weight_step(r, i, ip1);
      }
      break;
    }
  }
}

// Word action on a basis key: the rightmost letter acts first.
std::vector<Path> apply_word(const ModuleContext& ctx, const Word& w, const TensorKey& key) {
  std::vector<Path> cur{Path{key, 0, 1}};
  std::vector<Path> nxt;
  for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) {
    nxt.clear();
    for (const Path& p : cur) apply_letter(ctx, *it, p, nxt);
    std::swap(cur, nxt);
  }
  return cur;
}

using LaurentAcc = std::map<int, std::int64_t>;

RationalFunction to_rational(const LaurentAcc& acc) {
  int lo = 0;
  bool any = false;
  for (const auto& [e, c] : acc) {
    if (c == 0) continue;
    if (!any) lo = e;
    any = true;
  }
  if (!any) return {};
  const int hi = acc.rbegin()->first;
  std::vector<mpz_class> coeffs(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [e, c] : acc)
    if (e >= lo) coeffs[static_cast<std::size_t>(e - lo)] = static_cast<long>(c);
  return RationalFunction::from_parts(lo, IntPoly(std::move(coeffs)), IntPoly::constant(1));
}

std::map<TensorKey, LaurentAcc> word_image(const ModuleContext& ctx, const Word& w, const TensorKey& key) {
  std::map<TensorKey, LaurentAcc> img;
  for (const Path& p : apply_word(ctx, w, key)) img[p.key][p.exp] += p.mult;
  return img;
}

void check_margin(const ModuleContext& ctx, const TensorKey& key, std::size_t margin) {
  if (!ctx.has_margin(key, static_cast<int>(margin)))
    throw MarginError("key " + ctx.key_text(key) + " needs margin " + std::to_string(margin) + " inside window [" +
                      std::to_string(ctx.lo) + ", " + std::to_string(ctx.hi) + "]");
}

void check_alphabet(const ModuleContext& ctx, const AlgebraExpression& x) {
  if (x.alphabet_size() != ctx.m)
    throw AlphabetMismatch("expression over I_" + std::to_string(x.alphabet_size()) + " acting on V_" +
                           std::to_string(ctx.m));
}

}  // namespace

TensorVector act_generator(const ModuleContext& ctx, GeneratorSymbol sym, const TensorKey& key) {
  if (sym.index >= ctx.m) throw std::out_of_range("generator index outside the module alphabet");
  check_margin(ctx, key, 1);
  TensorVector out(ctx);
  for (const auto& [k, acc] : word_image(ctx, Word{sym}, key)) out.add_term(k, to_rational(acc));
  return out;
}

TensorVector act_expression(const ModuleContext& ctx, const AlgebraExpression& x, const TensorVector& vec) {
  check_alphabet(ctx, x);
  const std::size_t margin = word_length_bound(x);
  TensorVector out(ctx);
  for (const auto& [key, c] : vec.entries()) {
    check_margin(ctx, key, margin);
    for (const auto& [w, coeff] : x.terms()) {
      const RationalFunction scale = coeff * c;
      for (const auto& [k, acc] : word_image(ctx, w, key)) out.add_term(k, scale * to_rational(acc));
    }
  }
  return out;
}

// ------------------------------------------------------ tensor operators

TensorOperator compose(const TensorOperator& a, const TensorOperator& b) {
  TensorOperator out;
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      if (ta.factors.size() != tb.factors.size()) throw std::invalid_argument("compose: tensor arities differ");
      TensorOperatorTerm t;
      t.coeff = ta.coeff * tb.coeff;
      if (t.coeff.is_zero()) continue;
      for (std::size_t j = 0; j < ta.factors.size(); ++j) t.factors.push_back(ta.factors[j] * tb.factors[j]);
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::size_t word_length_bound(const TensorOperator& op) {
  std::size_t b = 0;
  for (const auto& t : op)
    for (const auto& f : t.factors) b = std::max(b, word_length_bound(f));
  return b;
}

TensorVector act_tensor_operator(const ModuleContext& ctx, const TensorOperator& op, const TensorVector& vec) {
  const std::size_t margin = word_length_bound(op);
  const ModuleContext single(ctx.m, 1, ctx.lo, ctx.hi);
  TensorVector out(ctx);
  for (const auto& [key, c] : vec.entries()) {
    check_margin(ctx, key, margin);
    for (const auto& t : op) {
      if (t.factors.size() != static_cast<std::size_t>(ctx.d))
        throw std::invalid_argument("tensor operator arity differs from the module's tensor degree");
      // Partial products over the first j factors.
      std::vector<std::pair<TensorKey, RationalFunction>> partial{{TensorKey{}, t.coeff * c}};
      for (std::size_t j = 0; j < t.factors.size() && !partial.empty(); ++j) {
        check_alphabet(ctx, t.factors[j]);
        const TensorVector img =
            act_expression(single, t.factors[j], TensorVector::basis(single, make_key({key[j]})));
        std::vector<std::pair<TensorKey, RationalFunction>> next;
        for (const auto& [pk, pc] : partial) {
          for (const auto& [fk, fc] : img.entries()) {
            TensorKey nk = pk;
            nk[j] = fk[0];
            next.emplace_back(nk, pc * fc);
          }
        }
        partial = std::move(next);
      }
      for (const auto& [k, x] : partial) out.add_term(k, x);
    }
  }
  return out;
}

namespace {

TensorOperator letter_coproduct(int m, GeneratorSymbol s) {
  const auto one = AlgebraExpression::unit(m);
  const auto gen = AlgebraExpression::generator(m, s);
  switch (s.kind) {
    case GenKind::E:
      return {{1, {gen, one}}, {1, {AlgebraExpression::generator(m, GeneratorSymbol::K(s.index)), gen}}};
    case GenKind::F:
      return {{1, {gen, AlgebraExpression::generator(m, GeneratorSymbol::K(s.index, -1))}}, {1, {one, gen}}};
    case GenKind::K:
      return {{1, {gen, gen}}};
  }
  return {};
}

}  // namespace

TensorOperator coproduct(const AlgebraExpression& x) {
  const int m = x.alphabet_size();
  TensorOperator out;
  for (const auto& [w, c] : x.terms()) {
    TensorOperator acc{{c, {AlgebraExpression::unit(m), AlgebraExpression::unit(m)}}};
    for (const auto& s : w) acc = compose(acc, letter_coproduct(m, s));
    out.insert(out.end(), acc.begin(), acc.end());
  }
  return out;
}

TensorOperator iterated_coproduct(const AlgebraExpression& x, int d, CoproductOrder order) {
  if (d < 1) throw std::invalid_argument("iterated_coproduct: d must be >= 1");
  TensorOperator cur{{1, {x}}};
  for (int step = 1; step < d; ++step) {
    TensorOperator next;
    for (const auto& t : cur) {
      const std::size_t pos = order == CoproductOrder::left ? 0 : t.factors.size() - 1;
      for (const auto& split : coproduct(t.factors[pos])) {
        TensorOperatorTerm nt;
        nt.coeff = t.coeff * split.coeff;
        for (std::size_t j = 0; j < t.factors.size(); ++j) {
          if (j == pos) {
            nt.factors.push_back(split.factors[0]);
            nt.factors.push_back(split.factors[1]);
          } else {
            nt.factors.push_back(t.factors[j]);
          }
        }
        next.push_back(std::move(nt));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// ----------------------------------------------------- operator equality

std::string EqualityResult::witness(const ModuleContext& ctx) const {
  if (equal || !key) return {};
  return "at " + ctx.key_text(*key) + ": lhs = " + (lhs ? lhs->to_string() : "?") +
         "; rhs = " + (rhs ? rhs->to_string() : "?");
}

namespace {

EqualityResult expressions_equal(const ModuleContext& ctx, const AlgebraExpression& a, const AlgebraExpression& b,
                                 bool parallel) {
  check_alphabet(ctx, a);
  check_alphabet(ctx, b);
  const int margin = static_cast<int>(std::max(word_length_bound(a), word_length_bound(b)));
  const auto keys = ctx.keys_with_margin(margin);
  if (keys.empty())
    throw MarginError("window [" + std::to_string(ctx.lo) + ", " + std::to_string(ctx.hi) +
                      "] has no key with margin " + std::to_string(margin));
  // Compare A - B against zero, then recompute both sides for the witness.
  const AlgebraExpression diff = a - b;
  const KeyAction lhs = [&](const TensorKey& k) { return act_expression(ctx, diff, TensorVector::basis(ctx, k)); };
  const KeyAction rhs = [&](const TensorKey&) { return TensorVector(ctx); };
  EqualityResult r = parallel ? compare_on_keys(ctx, keys, lhs, rhs) : compare_on_keys_serial(ctx, keys, lhs, rhs);
  if (!r.equal) {
    r.lhs = act_expression(ctx, a, TensorVector::basis(ctx, *r.key));
    r.rhs = act_expression(ctx, b, TensorVector::basis(ctx, *r.key));
  }
  return r;
}

}  // namespace

EqualityResult operators_equal_on_window(const ModuleContext& ctx, const AlgebraExpression& a,
                                         const AlgebraExpression& b) {
  return expressions_equal(ctx, a, b, true);
}

EqualityResult operators_equal_on_window_serial(const ModuleContext& ctx, const AlgebraExpression& a,
                                                const AlgebraExpression& b) {
  return expressions_equal(ctx, a, b, false);
}

EqualityResult tensor_operators_equal_on_window(const ModuleContext& ctx, const TensorOperator& a,
                                                const TensorOperator& b) {
  const int margin = static_cast<int>(std::max(word_length_bound(a), word_length_bound(b)));
  const auto keys = ctx.keys_with_margin(margin);
  if (keys.empty()) throw MarginError("window has no key with margin " + std::to_string(margin));
  const KeyAction lhs = [&](const TensorKey& k) { return act_tensor_operator(ctx, a, TensorVector::basis(ctx, k)); };
  const KeyAction rhs = [&](const TensorKey& k) { return act_tensor_operator(ctx, b, TensorVector::basis(ctx, k)); };
  return compare_on_keys(ctx, keys, lhs, rhs);
}

// --------------------------------------------------------------- weights

int Composition::degree() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::string Composition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

std::vector<Composition> compositions(int n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("compositions: need n >= 1 and d >= 0");
  std::vector<Composition> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(Composition{cur});
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, left - a);
    }
  };
  rec(0, d);
  return out;
}

Composition weight_of_key(const ModuleContext& ctx, const TensorKey& key) {
  Composition c{std::vector<int>(static_cast<std::size_t>(ctx.m), 0)};
  for (int j = 0; j < ctx.d; ++j) {
    const int r = ctx.residue(key[static_cast<std::size_t>(j)]);
    c.parts[static_cast<std::size_t>(r == 0 ? ctx.m - 1 : r - 1)] += 1;
  }
  return c;
}

TensorVector project_weight(const ModuleContext& ctx, const Composition& lambda, const TensorVector& vec) {
  if (lambda.parts.size() != static_cast<std::size_t>(ctx.m) || lambda.degree() != ctx.d)
    throw std::invalid_argument("project_weight: weight " + lambda.to_string() + " is not in Lambda_{m,d}");
  TensorVector out(ctx);
  for (const auto& [k, c] : vec.entries())
    if (weight_of_key(ctx, k) == lambda) out.add_term(k, c);
  return out;
}

// ------------------------------------------------------ relation suites

GeneratorImages identity_realization(int n) {
  GeneratorImages img;
  for (int i = 0; i < n; ++i) {
    for (GeneratorSymbol s : {GeneratorSymbol::E(i), GeneratorSymbol::F(i), GeneratorSymbol::K(i, 1), GeneratorSymbol::K(i, -1)})
      img.emplace(s, AlgebraExpression::generator(n, s));
  }
  return img;
}

namespace {

struct RelationInstance {
  std::string tag;
  nlohmann::json params;
  AlgebraExpression lhs;
  AlgebraExpression rhs;
};

AlgebraExpression gen(int n, GeneratorSymbol s) { return AlgebraExpression::generator(n, s); }

AlgebraExpression serre_element(int n, int i, int j, GenKind kind) {
  const int c = cartan_entry(n, i, j);
  const auto gi = gen(n, kind == GenKind::E ? GeneratorSymbol::E(i) : GeneratorSymbol::F(i));
  const auto gj = gen(n, kind == GenKind::E ? GeneratorSymbol::E(j) : GeneratorSymbol::F(j));
  AlgebraExpression s(n);
  for (int p = 0; p <= 1 - c; ++p) {
    AlgebraExpression t = divided_power(gi, p) * gj * divided_power(gi, 1 - c - p);
    if (p % 2) s -= t;
    else s += t;
  }
  return s;
}

std::vector<RelationInstance> defining_relations(int n) {
  std::vector<RelationInstance> rel;
  const auto one = AlgebraExpression::unit(n);
  const RationalFunction v = RationalFunction::v_power(1);
  const RationalFunction qdiff = v - v.inverse();
  for (int i = 0; i < n; ++i) {
    const auto K = gen(n, GeneratorSymbol::K(i)), Ki = gen(n, GeneratorSymbol::K(i, -1));
    for (int j = i + 1; j < n; ++j) {
      const auto Kj = gen(n, GeneratorSymbol::K(j));
      rel.push_back({"R1", {{"i", i}, {"j", j}, {"form", "KiKj=KjKi"}}, K * Kj, Kj * K});
    }
    rel.push_back({"R1", {{"i", i}, {"form", "KiKi^-1=1"}}, K * Ki, one});
    rel.push_back({"R1", {{"i", i}, {"form", "Ki^-1Ki=1"}}, Ki * K, one});
  }
  for (int i = 0; i < n; ++i) {
    const auto K = gen(n, GeneratorSymbol::K(i));
    for (int j = 0; j < n; ++j) {
      const int c = cartan_entry(n, i, j);
      const auto Ej = gen(n, GeneratorSymbol::E(j)), Fj = gen(n, GeneratorSymbol::F(j));
      rel.push_back({"R2", {{"i", i}, {"j", j}, {"form", "KiEj"}}, K * Ej, RationalFunction::v_power(c) * (Ej * K)});
      rel.push_back({"R2", {{"i", i}, {"j", j}, {"form", "KiFj"}}, K * Fj, RationalFunction::v_power(-c) * (Fj * K)});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto Ei = gen(n, GeneratorSymbol::E(i)), Fj = gen(n, GeneratorSymbol::F(j));
      AlgebraExpression rhs(n);
      if (i == j) rhs = (gen(n, GeneratorSymbol::K(i)) - gen(n, GeneratorSymbol::K(i, -1))) * qdiff.inverse();
      rel.push_back({"R3", {{"i", i}, {"j", j}}, Ei * Fj - Fj * Ei, rhs});
    }
  }
  for (GenKind kind : {GenKind::E, GenKind::F}) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          rel.push_back({kind == GenKind::E ? "R4" : "R5", {{"i", i}, {"j", j}}, serre_element(n, i, j, kind),
                         AlgebraExpression(n)});
  }
  return rel;
}

}  // namespace

Report relation_suite(const ModuleContext& ctx, const GeneratorImages& realization, int rank) {
  Report rep;
  rep.suite = "relation_suite";
  rep.params = {{"rank", rank}, {"m", ctx.m}, {"d", ctx.d}, {"window", {ctx.lo, ctx.hi}}};
  for (const auto& inst : defining_relations(rank)) {
    const auto a = substitute_generators(inst.lhs, realization, ctx.m);
    const auto b = substitute_generators(inst.rhs, realization, ctx.m);
    const EqualityResult r = operators_equal_on_window(ctx, a, b);
    nlohmann::json p = inst.params;
    p["keys"] = r.keys_checked;
    rep.add(inst.tag, std::move(p), r.equal, r.equal ? std::nullopt : std::optional<std::string>(r.witness(ctx)));
  }
  return rep;
}

}  // namespace qembed
