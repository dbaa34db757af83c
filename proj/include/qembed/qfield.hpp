#pragma once

// Exact arithmetic in Q(v).
//
// A RationalFunction is stored as v^shift * num(v) / den(v) with num, den in
// Z[v].  The canonical form is unique, so structural equality is value
// equality and hashing is sound:
//   * den(0) != 0 and num(0) != 0 (every power of v lives in `shift`)
//   * gcd(num, den) = 1 over Q
//   * the integer contents of num and den are coprime, lead(den) > 0
//   * zero is shift = 0, num = 0, den = 1

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qembed {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in Q(v)") {}
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Dense polynomial over Z; coefficient i multiplies v^i.  Always trimmed.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  static IntPoly constant(const mpz_class& c);
  static IntPoly monomial(const mpz_class& c, unsigned degree);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }
  const mpz_class& lead() const { return c_.back(); }

  // Number of vanishing low-order coefficients (the v-adic valuation).
  unsigned valuation() const;
  IntPoly shifted_up(unsigned k) const;
  IntPoly shifted_down(unsigned k) const;
  IntPoly reversed() const;

  mpz_class content() const;
  IntPoly divexact(const mpz_class& c) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& c);
  bool operator==(const IntPoly& o) const = default;

  mpq_class eval(const mpq_class& x) const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Primitive gcd over Z[v] with positive leading coefficient.  gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
// a / b where b divides a in Q[v] and the quotient has integer coefficients.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);

class RationalFunction {
 public:
  RationalFunction() : den_(IntPoly::constant(1)) {}
  RationalFunction(long c);  // NOLINT: integers are scalars
  RationalFunction(const mpz_class& c);  // NOLINT
  RationalFunction(const mpq_class& c);  // NOLINT

  static RationalFunction v_power(int k);
  static RationalFunction monomial(const mpz_class& c, int k);
  // Normalizes v^shift * num / den; throws DivisionByZero when den = 0.
  static RationalFunction from_parts(int shift, IntPoly num, IntPoly den);

  int vshift() const { return shift_; }
  const IntPoly& numerator() const { return num_; }
  const IntPoly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }
  // Single term c*v^k.
  bool is_monomial() const { return den_.is_one() && num_.degree() == 0; }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  bool operator==(const RationalFunction& o) const = default;

  RationalFunction inverse() const;
  RationalFunction pow(int e) const;
  // Multiplication by v^k without renormalizing.
  RationalFunction times_v_power(int k) const;
  // The bar involution v -> v^{-1}.
  RationalFunction bar() const;

  std::size_t hash() const;
  std::string to_string() const;
  static RationalFunction parse(std::string_view text);

 private:
  void normalize();

  int shift_ = 0;
  IntPoly num_;
  IntPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& x);

// [a] = (v^a - v^-a) / (v - v^-1); a >= 0.
RationalFunction qint(int a);
// [a]! = [a][a-1]...[1]; a >= 0.
RationalFunction qfact(int a);
// Exact value at v = v0; throws PoleError at v0 = 0 or at a root of den.
mpq_class evaluate_at(const RationalFunction& x, const mpq_class& v0);

}  // namespace qembed

template <>
struct std::hash<qembed::RationalFunction> {
  std::size_t operator()(const qembed::RationalFunction& x) const noexcept { return x.hash(); }
};
