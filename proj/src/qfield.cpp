#include "qembed/qfield.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qembed/detail/lexer.hpp"

namespace qembed {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(const mpz_class& c, unsigned degree) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

unsigned IntPoly::valuation() const {
  unsigned k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  return k;
}

IntPoly IntPoly::shifted_up(unsigned k) const {
  if (k == 0 || is_zero()) return *this;
  IntPoly r;
  r.c_.resize(c_.size() + k);
  std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
  return r;
}

IntPoly IntPoly::shifted_down(unsigned k) const {
  if (k == 0) return *this;
  IntPoly r;
  if (k < c_.size()) r.c_.assign(c_.begin() + k, c_.end());
  return r;
}

IntPoly IntPoly::reversed() const {
  IntPoly r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.trim();
  return r;
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::divexact(const mpz_class& c) const {
  IntPoly r = *this;
  for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  return IntPoly(std::move(out));
}

IntPoly operator*(IntPoly a, const mpz_class& c) {
  if (c == 0) return {};
  for (auto& x : a.c_) x *= c;
  return a;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

namespace {

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  IntPoly q = p.divexact(p.content());
  return q.lead() < 0 ? -q : q;
}

// lead(b)^k * a mod b with k large enough to stay in Z[v].
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const unsigned shift = static_cast<unsigned>(a.degree() - db);
    const mpz_class la = a.lead();
    a = a * b.lead() - IntPoly::monomial(la, shift) * b;
  }
  return a;
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  IntPoly x = primitive_part(a);
  IntPoly y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = primitive_part(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return {};
  std::vector<mpz_class> rem = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) throw std::logic_error("exact_quotient: divisor does not divide");
  std::vector<mpz_class> q(static_cast<std::size_t>(dq) + 1);
  for (int k = dq; k >= 0; --k) {
    mpz_class& top = rem[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t()))
      throw std::logic_error("exact_quotient: non-integral quotient");
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    for (int j = 0; j <= db; ++j)
      mpz_submul(rem[static_cast<std::size_t>(k + j)].get_mpz_t(), t.get_mpz_t(),
                 b[static_cast<std::size_t>(j)].get_mpz_t());
    q[static_cast<std::size_t>(k)] = std::move(t);
  }
  for (const auto& r : rem)
    if (r != 0) throw std::logic_error("exact_quotient: divisor does not divide");
  return IntPoly(std::move(q));
}

// ------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(long c) : num_(IntPoly::constant(c)), den_(IntPoly::constant(1)) {}
RationalFunction::RationalFunction(const mpz_class& c) : num_(IntPoly::constant(c)), den_(IntPoly::constant(1)) {}
RationalFunction::RationalFunction(const mpq_class& c) {
  if (c.get_den() == 0) throw DivisionByZero();
  mpq_class q = c;
  q.canonicalize();
  num_ = IntPoly::constant(q.get_num());
  den_ = IntPoly::constant(q.get_den());
}

RationalFunction RationalFunction::v_power(int k) { return monomial(1, k); }

RationalFunction RationalFunction::monomial(const mpz_class& c, int k) {
  RationalFunction r(c);
  if (!r.is_zero()) r.shift_ = k;
  return r;
}

RationalFunction RationalFunction::from_parts(int shift, IntPoly num, IntPoly den) {
  RationalFunction r;
  r.shift_ = shift;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    shift_ = 0;
    den_ = IntPoly::constant(1);
    return;
  }
  if (const unsigned k = num_.valuation(); k != 0) {
    num_ = num_.shifted_down(k);
    shift_ += static_cast<int>(k);
  }
  if (den_.is_one()) return;
  if (const unsigned k = den_.valuation(); k != 0) {
    den_ = den_.shifted_down(k);
    shift_ -= static_cast<int>(k);
  }
  if (den_.degree() > 0) {
    const IntPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
  }
  mpz_class c = num_.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), den_.content().get_mpz_t());
  if (den_.lead() < 0) c = -c;
  if (c != 1) {
    num_ = num_.divexact(c);
    den_ = den_.divexact(c);
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int s = std::min(shift_, o.shift_);
  const auto up_a = static_cast<unsigned>(shift_ - s);
  const auto up_b = static_cast<unsigned>(o.shift_ - s);
  if (den_ == o.den_) {
    num_ = num_.shifted_up(up_a) + o.num_.shifted_up(up_b);
  } else {
    num_ = (num_ * o.den_).shifted_up(up_a) + (o.num_ * den_).shifted_up(up_b);
    den_ = den_ * o.den_;
  }
  shift_ = s;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFunction();
  shift_ += o.shift_;
  num_ = num_ * o.num_;
  if (den_.is_one() && o.den_.is_one()) return *this;  // num(0) stays nonzero
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return from_parts(-shift_, den_, num_);
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction acc(1);
  RationalFunction base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

RationalFunction RationalFunction::times_v_power(int k) const {
  RationalFunction r = *this;
  if (!r.is_zero()) r.shift_ += k;
  return r;
}

RationalFunction RationalFunction::bar() const {
  if (is_zero()) return *this;
  // v^s N(1/v) / D(1/v) = v^{-s - deg N + deg D} N*(v) / D*(v)
  return from_parts(-shift_ - num_.degree() + den_.degree(), num_.reversed(), den_.reversed());
}

std::size_t RationalFunction::hash() const {
  std::size_t h = std::hash<int>{}(shift_);
  auto mix = [&h](const IntPoly& p) {
    for (const auto& c : p.coeffs()) {
      const std::size_t limb = mpz_size(c.get_mpz_t()) ? mpz_getlimbn(c.get_mpz_t(), 0) : 0;
      h ^= (limb + static_cast<std::size_t>(mpz_sgn(c.get_mpz_t()) + 2)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h ^= 0x51ed270b27ULL + (h << 6);
  };
  mix(num_);
  mix(den_);
  return h;
}

namespace {

// Renders sum_i c[i] * v^(i + shift), highest power first.
std::string laurent_text(const IntPoly& p, int shift) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const mpz_class& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const int e = i + shift;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'v';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

std::size_t term_count(const IntPoly& p) {
  return static_cast<std::size_t>(std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const mpz_class& c) { return c != 0; }));
}

}  // namespace

std::string RationalFunction::to_string() const {
  std::string n = laurent_text(num_, shift_);
  if (den_.is_one()) return n;
  std::string d = laurent_text(den_, 0);
  if (term_count(num_) > 1) n = "(" + n + ")";
  if (term_count(den_) > 1) d = "(" + d + ")";
  return n + " / " + d;
}

RationalFunction RationalFunction::parse(std::string_view text) {
  detail::Lexer lex(text);
  RationalFunction r = detail::parse_scalar_sum(lex);
  if (!lex.at(detail::Tok::End)) lex.fail("trailing input");
  return r;
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& x) { return os << x.to_string(); }

// ------------------------------------------------------ quantum integers

RationalFunction qint(int a) {
  if (a < 0) throw std::invalid_argument("qint: quantum integers are defined for a >= 0 only");
  // v^{a-1} + v^{a-3} + ... + v^{1-a}
  if (a == 0) return {};
  std::vector<mpz_class> c(static_cast<std::size_t>(2 * (a - 1) + 1));
  for (std::size_t i = 0; i < c.size(); i += 2) c[i] = 1;
  return RationalFunction::from_parts(1 - a, IntPoly(std::move(c)), IntPoly::constant(1));
}

RationalFunction qfact(int a) {
  if (a < 0) throw std::invalid_argument("qfact: quantum factorials are defined for a >= 0 only");
  RationalFunction acc(1);
  for (int k = 2; k <= a; ++k) acc *= qint(k);
  return acc;
}

mpq_class evaluate_at(const RationalFunction& x, const mpq_class& v0) {
  if (x.is_zero()) return 0;
  if (v0 == 0) throw PoleError("evaluate_at: v = 0 is not in the domain of a Laurent expression");
  const mpq_class d = x.denominator().eval(v0);
  if (d == 0) throw PoleError("evaluate_at: denominator vanishes at v = " + v0.get_str());
  mpq_class p = 1;
  const int s = x.vshift();
  for (int i = 0; i < (s < 0 ? -s : s); ++i) p *= v0;
  if (s < 0) p = 1 / p;
  mpq_class r = p * x.numerator().eval(v0) / d;
  r.canonicalize();
  return r;
}

}  // namespace qembed
