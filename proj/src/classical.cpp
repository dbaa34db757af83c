#include <random>
#include <sstream>

#include "qembed/embed.hpp"

namespace qembed {

RationalMatrix::RationalMatrix(int size) : n_(size), a_(static_cast<std::size_t>(size * size)) {
  if (size < 0) throw std::invalid_argument("matrix size must be nonnegative");
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<mpq_class>>& rows) {
  RationalMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n_; ++i) {
    if (rows[static_cast<std::size_t>(i)].size() != rows.size()) throw std::invalid_argument("matrix rows must be square");
    for (int j = 0; j < m.n_; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

mpq_class RationalMatrix::trace() const {
  mpq_class t = 0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

namespace {

void same_size(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix sizes differ");
}

}  // namespace

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  same_size(a, b);
  RationalMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  same_size(a, b);
  RationalMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  same_size(a, b);
  const int n = a.size();
  RationalMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < n; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << at(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

RationalMatrix classical_embed(const RationalMatrix& block, int r, ClassicalVariant variant) {
  const int n = block.size();
  if (r < 0 || r > n) throw std::invalid_argument("classical_embed: r must lie in [0, n]");
  RationalMatrix out(n + 1);
  auto pos = [r](int i) { return i < r ? i : i + 1; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(pos(i), pos(j)) = block.at(i, j);
  if (variant == ClassicalVariant::gl) out.at(r, r) = -block.trace();
  return out;
}

Report verify_classical_oracle(int n, int samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("classical oracle needs n >= 1");
  if (samples < 1) throw std::invalid_argument("classical oracle needs at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-9, 9);
  auto random_matrix = [&](bool traceless) {
    RationalMatrix x(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x.at(i, j) = entry(rng);
    if (traceless) x.at(n - 1, n - 1) -= x.trace();
    return x;
  };

  Report rep;
  rep.suite = "classical-oracle";
  rep.params = {{"n", n}, {"samples", samples}, {"seed", seed}};
  for (ClassicalVariant var : {ClassicalVariant::sl, ClassicalVariant::gl}) {
    const bool sl = var == ClassicalVariant::sl;
    for (int r = 0; r <= n; ++r) {
      std::optional<std::string> witness;
      for (int s = 0; s < samples && !witness; ++s) {
        const RationalMatrix x = random_matrix(sl), y = random_matrix(sl);
        const RationalMatrix lhs = classical_embed(commutator(x, y), r, var);
        const RationalMatrix rhs = commutator(classical_embed(x, r, var), classical_embed(y, r, var));
        if (!(lhs == rhs))
          witness = "sample " + std::to_string(s) + ": X = " + x.to_string() + ", Y = " + y.to_string();
      }
      rep.add("bracket", {{"variant", sl ? "sl" : "gl"}, {"r", r}}, !witness, witness);
    }
  }
  return rep;
}

}  // namespace qembed
