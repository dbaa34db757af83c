#include "qembed/halfpos.hpp"

#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qembed/cartan.hpp"

namespace qembed {

MultiDegree multidegree(const EWord& w, int m) {
  MultiDegree d(static_cast<std::size_t>(m), 0);
  for (auto a : w) d[a] += 1;
  return d;
}

// -------------------------------------------------------- PositiveElement

PositiveElement::PositiveElement(int alphabet_size) : m_(alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 255) throw std::invalid_argument("alphabet size must lie in [2, 255]");
}

PositiveElement PositiveElement::scalar(int m, const RationalFunction& c) {
  PositiveElement x(m);
  x.add_term({}, c);
  return x;
}

PositiveElement PositiveElement::generator(int m, int k) {
  return word(m, EWord{static_cast<std::uint8_t>(k)});
}

PositiveElement PositiveElement::word(int m, EWord w, const RationalFunction& c) {
  PositiveElement x(m);
  x.add_term(w, c);
  return x;
}

PositiveElement PositiveElement::from_expression(const AlgebraExpression& x) {
  PositiveElement out(x.alphabet_size());
  for (const auto& [w, c] : x.terms()) {
    EWord ew;
    ew.reserve(w.size());
    for (const auto& s : w) {
      if (s.kind != GenKind::E) throw std::invalid_argument("symbol " + s.to_string() + " is not in the positive half");
      ew.push_back(s.index);
    }
    out.add_term(ew, c);
  }
  return out;
}

AlgebraExpression PositiveElement::to_expression() const {
  AlgebraExpression out(m_);
  for (const auto& [w, c] : terms_) {
    Word ww;
    ww.reserve(w.size());
    for (auto a : w) ww.push_back(GeneratorSymbol::E(a));
    out.add_term(ww, c);
  }
  return out;
}

void PositiveElement::add_term(const EWord& w, const RationalFunction& c) {
  if (c.is_zero()) return;
  for (auto a : w)
    if (a >= m_) throw std::out_of_range("letter E" + std::to_string(a) + " outside alphabet I_" + std::to_string(m_));
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::map<MultiDegree, PositiveElement> PositiveElement::homogeneous_components() const {
  std::map<MultiDegree, PositiveElement> out;
  for (const auto& [w, c] : terms_) {
    auto it = out.try_emplace(multidegree(w, m_), m_).first;
    it->second.terms_.emplace(w, c);
  }
  return out;
}

std::optional<MultiDegree> PositiveElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  const MultiDegree d = multidegree(terms_.begin()->first, m_);
  for (const auto& [w, c] : terms_)
    if (multidegree(w, m_) != d) return std::nullopt;
  return d;
}

PositiveElement PositiveElement::operator-() const {
  PositiveElement r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

PositiveElement& PositiveElement::operator+=(const PositiveElement& o) {
  if (o.m_ != m_) throw AlphabetMismatch("positive elements over different alphabets");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

PositiveElement& PositiveElement::operator-=(const PositiveElement& o) { return *this += -o; }

PositiveElement& PositiveElement::operator*=(const RationalFunction& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

PositiveElement operator*(const PositiveElement& a, const PositiveElement& b) {
  if (a.m_ != b.m_) throw AlphabetMismatch("positive elements over different alphabets");
  PositiveElement r(a.m_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      EWord w;
      w.reserve(wa.size() + wb.size());
      w.insert(w.end(), wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  }
  return r;
}

PositiveElement PositiveElement::pow(int p) const {
  if (p < 0) throw std::invalid_argument("negative power of a positive element");
  PositiveElement acc = unit(m_);
  for (int i = 0; i < p; ++i) acc = acc * *this;
  return acc;
}

PositiveElement divided_power(const PositiveElement& x, int p) {
  if (p < 0) throw std::invalid_argument("divided_power: p must be >= 0");
  return qfact(p).inverse() * x.pow(p);
}

// ------------------------------------------------------------ derivations

int pairing_exponent(int m, int k, const MultiDegree& deg) {
  int s = 0;
  for (std::size_t j = 0; j < deg.size(); ++j) s += cartan_entry(m, k, static_cast<int>(j)) * deg[j];
  return s;
}

PositiveElement twisted_derivation(int k, const PositiveElement& x) {
  const int m = x.alphabet_size();
  if (k < 0 || k >= m) throw std::out_of_range("derivation index outside the alphabet");
  std::vector<int> row(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = cartan_entry(m, k, j);
  PositiveElement out(m);
  for (const auto& [w, c] : x.terms()) {
    int e = 0;
    for (std::size_t t = w.size(); t-- > 0;) {
      if (w[t] == k) {
        EWord nw;
        nw.reserve(w.size() - 1);
        nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(t) + 1, w.end());
        out.add_term(nw, c.times_v_power(e));
      }
      e += row[w[t]];
    }
  }
  return out;
}

// ---------------------------------------------------------------- tester

std::string QuotientVerdict::witness() const {
  if (zero) return {};
  std::ostringstream os;
  os << "derivations";
  if (path.empty()) os << " (none)";
  for (int k : path) os << " r_" << k;
  os << " leave the nonzero scalar " << (scalar ? scalar->to_string() : "?");
  return os.str();
}

namespace {

// Multiplies through by denominators so every coefficient is a Laurent
// polynomial; zero-ness in the quotient is unaffected.
PositiveElement clear_denominators(PositiveElement x) {
  for (;;) {
    const RationalFunction* bad = nullptr;
    for (const auto& [w, c] : x.terms())
      if (!c.is_laurent()) {
        bad = &c;
        break;
      }
    if (!bad) return x;
    x *= RationalFunction::from_parts(0, bad->denominator(), IntPoly::constant(1));
  }
}

// Canonical text of x up to a nonzero factor +-v^s / g.
std::string memo_key(const PositiveElement& x) {
  const RationalFunction& lead = x.terms().begin()->second;
  mpz_class g = 0;
  for (const auto& [w, c] : x.terms()) g = gcd(g, c.numerator().content());
  const int sign = sgn(lead.numerator()[0]);
  const RationalFunction scale = RationalFunction(mpq_class(sign, g)).times_v_power(-lead.vshift());
  std::string key;
  for (const auto& [w, c] : x.terms()) {
    for (auto a : w) key += static_cast<char>('a' + a);
    key += ':';
    key += (scale * c).to_string();
    key += ';';
  }
  return key;
}

int total(const MultiDegree& d) { return std::accumulate(d.begin(), d.end(), 0); }

}  // namespace

SerreQuotientTester::SerreQuotientTester(std::size_t memo_cap) : cap_(memo_cap) {}

std::size_t SerreQuotientTester::memo_size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

std::optional<std::vector<int>> SerreQuotientTester::lookup(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = memo_.find(key);
  if (it == memo_.end()) return std::nullopt;
  return it->second ? *it->second : std::vector<int>{-1};
}

void SerreQuotientTester::store(const std::string& key, const std::optional<std::vector<int>>& failing_path) {
  std::unique_lock lock(mu_);
  if (memo_.size() < cap_) memo_.emplace(key, failing_path);
}

QuotientVerdict SerreQuotientTester::test_homogeneous(const PositiveElement& x, const MultiDegree& deg) {
  QuotientVerdict verdict;
  if (x.is_zero()) return verdict;
  if (total(deg) == 0) {
    verdict.zero = false;
    return verdict;
  }
  std::string key;
  if (cap_ > 0) {
    key = memo_key(x);
    if (auto hit = lookup(key)) {
      // {-1} encodes a cached zero verdict.
      if (hit->size() == 1 && (*hit)[0] == -1) return verdict;
      verdict.zero = false;
      verdict.path = *hit;
      return verdict;
    }
  }
  for (int k = 0; k < x.alphabet_size(); ++k) {
    if (deg[static_cast<std::size_t>(k)] == 0) continue;
    const PositiveElement y = twisted_derivation(k, x);
    if (y.is_zero()) continue;
    MultiDegree d = deg;
    d[static_cast<std::size_t>(k)] -= 1;
    QuotientVerdict sub = test_homogeneous(y, d);
    if (!sub.zero) {
      verdict.zero = false;
      verdict.path.push_back(k);
      verdict.path.insert(verdict.path.end(), sub.path.begin(), sub.path.end());
      if (cap_ > 0) store(key, verdict.path);
      return verdict;
    }
  }
  if (cap_ > 0) store(key, std::nullopt);
  return verdict;
}

QuotientVerdict SerreQuotientTester::test(const PositiveElement& x) {
  for (const auto& [deg, comp] : x.homogeneous_components()) {
    const PositiveElement cleared = clear_denominators(comp);
    QuotientVerdict v = test_homogeneous(cleared, deg);
    if (v.zero) continue;
    // Replay the path on the original component for the witness scalar.
    PositiveElement y = comp;
    for (int k : v.path) y = twisted_derivation(k, y);
    v.scalar = y.terms().empty() ? RationalFunction() : y.terms().begin()->second;
    return v;
  }
  return {};
}

bool is_zero_in_quotient(const PositiveElement& x) {
  SerreQuotientTester tester(0);
  return tester.is_zero(x);
}

// -------------------------------------------------------- lemma formulas

namespace {

struct Task {
  std::string tag;
  nlohmann::json params;
  std::function<PositiveElement()> element;
};

Report run_tasks(const std::string& suite, nlohmann::json params, const std::vector<Task>& tasks,
                 SerreQuotientTester& tester) {
  std::vector<QuotientVerdict> verdicts(tasks.size());
  std::vector<std::string> errors(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks.size()); ++t) {
    const auto i = static_cast<std::size_t>(t);
    try {
      verdicts[i] = tester.test(tasks[i].element());
    } catch (const std::exception& e) {
      verdicts[i].zero = false;
      errors[i] = e.what();
    }
  }
  Report rep;
  rep.suite = suite;
  rep.params = std::move(params);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::optional<std::string> witness;
    if (!errors[i].empty()) witness = "error: " + errors[i];
    else if (!verdicts[i].zero) witness = verdicts[i].witness();
    rep.add(tasks[i].tag, tasks[i].params, verdicts[i].zero, witness);
  }
  return rep;
}

PositiveElement gen(int m, int k) { return PositiveElement::generator(m, residue(k, m)); }
PositiveElement dp(int m, int k, int p) { return divided_power(gen(m, k), p); }

}  // namespace

Report verify_lemma_formulas(int pmax, SerreQuotientTester& tester, LemmaVariant variant) {
  if (pmax < 1) throw std::invalid_argument("pmax must be >= 1");
  constexpr int m = 3;
  const RationalFunction v = RationalFunction::v_power(1);
  const RationalFunction vi = v.inverse();
  std::vector<Task> tasks;
  for (int r = 0; r < m; ++r) {
    const int i = r, j = residue(r + 1, m), l = residue(r - 1, m);
    const PositiveElement e = gen(m, i) * gen(m, j) - vi * (gen(m, j) * gen(m, i));
    for (int p = 1; p <= pmax; ++p) {
      const nlohmann::json params = {{"p", p}, {"i", i}, {"j", j}, {"l", l}};
      tasks.push_back({"s1", params, [=] { return twisted_derivation(l, divided_power(e, p)); }});
      tasks.push_back({"s2", params, [=] { return twisted_derivation(i, divided_power(e, p)); }});
      tasks.push_back({"s3", params, [=] {
                         PositiveElement rhs(m);
                         for (int a = 0; a <= p - 1; ++a)
                           rhs += RationalFunction(a % 2 ? -1 : 1).times_v_power(-2 * a) *
                                  (dp(m, j, a) * dp(m, i, p) * dp(m, j, p - 1 - a));
                         rhs *= (v - vi).times_v_power(p - 2);
                         return twisted_derivation(j, divided_power(e, p)) - rhs;
                       }});
      tasks.push_back({"s4", params, [=] {
                         const PositiveElement rhs = (v - vi).times_v_power(p - 2) * divided_power(e, p - 1);
                         return twisted_derivation(i, twisted_derivation(j, divided_power(e, p))) - rhs;
                       }});
      tasks.push_back({"s5", params, [=] {
                         PositiveElement rhs(m);
                         for (int a = 0; a <= p - 2; ++a) {
                           const int sign = (variant == LemmaVariant::corrected && a % 2) ? -1 : 1;
                           rhs += RationalFunction(sign).times_v_power(-3 * a) *
                                  (dp(m, j, a) * dp(m, i, p) * dp(m, j, p - 2 - a));
                         }
                         rhs *= ((v - vi) * (v * v - vi * vi)).times_v_power(2 * (p - 3));
                         return twisted_derivation(j, twisted_derivation(j, divided_power(e, p))) - rhs;
                       }});
    }
  }
  return run_tasks("lemma-s",
                   {{"pmax", pmax}, {"eps", -1}, {"variant", variant == LemmaVariant::corrected ? "corrected" : "printed"}},
                   tasks, tester);
}

// -------------------------------------------------------- image Serre

Report verify_serre_for_images(const EmbeddingSpec& spec, SerreQuotientTester& tester) {
  spec.validate();
  const int n = spec.n, m = n + 1, r = spec.r;
  std::vector<PositiveElement> e;
  for (int i = 0; i < n; ++i)
    e.push_back(PositiveElement::from_expression(image_generator(spec, GeneratorSymbol::E(i))));

  std::vector<Task> tasks;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int c = cartan_entry(n, i, j);
      tasks.push_back({"serre", {{"i", i}, {"j", j}, {"c", c}}, [=, &e] {
                         PositiveElement s(m);
                         for (int p = 0; p <= 1 - c; ++p) {
                           PositiveElement t = divided_power(e[static_cast<std::size_t>(i)], p) *
                                               e[static_cast<std::size_t>(j)] *
                                               divided_power(e[static_cast<std::size_t>(i)], 1 - c - p);
                           if (p % 2) s -= t;
                           else s += t;
                         }
                         return s;
                       }});
    }
  }
  for (int p = 1; p <= 3; ++p) {
    tasks.push_back({"e-p", {{"p", p}}, [=, &e] {
                       return divided_power(e[static_cast<std::size_t>(r)], p) -
                              PositiveElement::from_expression(image_divided_power(spec, Side::E, p));
                     }});
  }
  if (n == 2) {
    const int i = r, j = residue(r + 1, m), l = residue(r - 1, m);
    tasks.push_back({"serre-deg-5", {{"i", i}, {"j", j}, {"l", l}}, [=] {
                       return dp(m, l, 3) * gen(m, i) * gen(m, j) - dp(m, l, 2) * gen(m, i) * gen(m, j) * gen(m, l) +
                              gen(m, l) * gen(m, i) * gen(m, j) * dp(m, l, 2) - gen(m, i) * gen(m, j) * dp(m, l, 3);
                     }});
  }
  if (spec.eps == 1) {
    // e_r at eps = +1 equals -v times the eps = -1 element with r, r+1 swapped.
    const int i = r, j = r + 1;
    tasks.push_back({"role-swap", {{"i", i}, {"j", j}}, [=, &e] {
                       const RationalFunction v = RationalFunction::v_power(1);
                       const PositiveElement swapped = gen(m, j) * gen(m, i) - v.inverse() * (gen(m, i) * gen(m, j));
                       return e[static_cast<std::size_t>(r)] + v * swapped;
                     }});
  }
  return run_tasks("serre-free", spec.to_json(), tasks, tester);
}

}  // namespace qembed
