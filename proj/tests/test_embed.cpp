#include <doctest.h>

#include "qembed/embed.hpp"

using qembed::AlgebraExpression;
using qembed::EmbeddingSpec;
using qembed::GeneratorSymbol;
using qembed::ModuleContext;
using qembed::RationalFunction;

namespace {
AlgebraExpression X(const char* s, int m) { return AlgebraExpression::parse(s, m); }

// Does u_k -> u'_{map(k)} intertwine every E_i, F_i with its image on [lo, hi]?
template <class Map>
bool intertwines(const EmbeddingSpec& s, Map map, int lo, int hi) {
  const ModuleContext src(s.n, 1, lo, hi);
  const ModuleContext tgt(s.n + 1, 1, 4 * lo, 4 * hi);
  for (int k = lo + 1; k <= hi - 1; ++k)
    for (int i = 0; i < s.n; ++i)
      for (GeneratorSymbol g : {GeneratorSymbol::E(i), GeneratorSymbol::F(i)}) {
        const auto lhs_src = qembed::act_generator(src, g, qembed::make_key({k}));
        qembed::TensorVector lhs(tgt);
        for (const auto& [key, c] : lhs_src.entries()) lhs.add_term(qembed::make_key({int(map(key[0]))}), c);
        const auto rhs = qembed::act_expression(tgt, qembed::image_generator(s, g),
                                                qembed::TensorVector::basis(tgt, qembed::make_key({int(map(k))})));
        if (!(lhs == rhs)) return false;
      }
  return true;
}
}  // namespace

TEST_CASE("embedding parameters are validated") {
  CHECK_THROWS_AS((EmbeddingSpec{1, 0, -1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((EmbeddingSpec{2, 2, -1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((EmbeddingSpec{2, -1, -1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((EmbeddingSpec{2, 0, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((EmbeddingSpec{3, 2, 1}.validate()));
  CHECK(qembed::parse_mutation("") == qembed::Mutation::none);
  CHECK(qembed::parse_mutation("sign-eps") == qembed::Mutation::sign_eps);
  CHECK_THROWS(qembed::parse_mutation("flip"));
}

TEST_CASE("generator images") {
  const EmbeddingSpec s{3, 1, +1};
  CHECK(qembed::image_generator(s, GeneratorSymbol::E(0)) == X("E0", 4));
  CHECK(qembed::image_generator(s, GeneratorSymbol::E(1)) == X("E1*E2 - v*E2*E1", 4));
  CHECK(qembed::image_generator(s, GeneratorSymbol::F(1)) == X("F2*F1 - v^-1*F1*F2", 4));
  CHECK(qembed::image_generator(s, GeneratorSymbol::K(1)) == X("K1*K2", 4));
  CHECK(qembed::image_generator(s, GeneratorSymbol::K(1, -1)) == X("K2^-1*K1^-1", 4));
  CHECK(qembed::image_generator(s, GeneratorSymbol::K(2)) == X("K3", 4));
  CHECK(qembed::image_generator(s, GeneratorSymbol::F(2)) == X("F3", 4));
  CHECK(qembed::image_realization(s).size() == 12);
  CHECK_THROWS(qembed::image_generator(s, GeneratorSymbol::E(3)));

  const EmbeddingSpec t{2, 0, -1};
  CHECK(qembed::image_generator(t, GeneratorSymbol::E(0)) == X("E0*E1 - v^-1*E1*E0", 3));
  CHECK(qembed::image_generator(t, GeneratorSymbol::E(1)) == X("E2", 3));
}

TEST_CASE("divided power images") {
  for (int eps : {-1, 1}) {
    const EmbeddingSpec s{2, 1, eps};
    CHECK(qembed::image_divided_power(s, qembed::Side::E, 0) == AlgebraExpression::unit(3));
    CHECK(qembed::image_divided_power(s, qembed::Side::E, 1) == qembed::image_generator(s, GeneratorSymbol::E(1)));
    CHECK(qembed::image_divided_power(s, qembed::Side::F, 1) == qembed::image_generator(s, GeneratorSymbol::F(1)));
    const RationalFunction ve = RationalFunction::v_power(eps);
    const AlgebraExpression expect = X("E1^(2)*E2^(2)", 3) - ve * X("E2*E1^(2)*E2", 3) + ve * ve * X("E2^(2)*E1^(2)", 3);
    CHECK(qembed::image_divided_power(s, qembed::Side::E, 2) == expect);
  }
}

TEST_CASE("sigma") {
  for (int n : {2, 3, 4})
    for (int r = 0; r < n; ++r) CHECK(qembed::sigma_index(EmbeddingSpec{n, r, -1}, 0) == 0);
  CHECK(qembed::sigma_index(EmbeddingSpec{2, 0, -1}, 1) == 2);
  CHECK(qembed::sigma_index(EmbeddingSpec{2, 1, -1}, 1) == 1);
  CHECK(qembed::sigma_index(EmbeddingSpec{2, 1, -1}, -1) == -2);
  CHECK(qembed::sigma_index(EmbeddingSpec{3, 1, -1}, 5) == 7);

  for (int n : {2, 3})
    for (int r = 0; r < n; ++r) {
      const EmbeddingSpec s{n, r, -1};
      for (long k = -20; k <= 20; ++k) {
        const long t = qembed::sigma_index(s, k);
        CHECK(qembed::sigma_preimage(s, t) == k);
        CHECK(((t % (n + 1)) + (n + 1)) % (n + 1) != r + 1);
      }
      CHECK_FALSE(qembed::sigma_preimage(s, r + 1));
      CHECK(intertwines(s, [&](long k) { return qembed::sigma_index(s, k); }, -6, 6));
    }
}

TEST_CASE("floor/ceiling index rule fails to intertwine for r >= 1") {
  const EmbeddingSpec s{2, 1, -1};
  CHECK(qembed::sigma_index_floor_ceil(s, 1) == 2);
  CHECK_FALSE(intertwines(s, [&](long k) { return qembed::sigma_index_floor_ceil(s, k); }, -6, 6));
  // At r = 0 both rules coincide.
  const EmbeddingSpec z{3, 0, -1};
  for (long k = -10; k <= 10; ++k) CHECK(qembed::sigma_index_floor_ceil(z, k) == qembed::sigma_index(z, k));
}

TEST_CASE("module embedding") {
  const EmbeddingSpec s{2, 0, -1};
  const ModuleContext src(2, 2, -4, 4);
  const ModuleContext tgt = qembed::target_context(s, src, 0);
  const auto u = qembed::TensorVector::basis(src, qembed::make_key({1, 2}));
  CHECK(qembed::embed_vector(s, u, tgt) == qembed::TensorVector::basis(tgt, qembed::make_key({2, 3})));
  const ModuleContext small(3, 2, -1, 1);
  CHECK_THROWS_AS(qembed::embed_vector(s, u, small), qembed::MarginError);
  const ModuleContext d1(2, 1, -4, 4);
  CHECK(qembed::embed_vector(s, qembed::TensorVector::basis(d1, qembed::make_key({0})), qembed::target_context(s, d1, 0)) ==
        qembed::TensorVector::basis(qembed::target_context(s, d1, 0), qembed::make_key({0})));
}

TEST_CASE("intertwining and coproduct examples") {
  CHECK(qembed::verify_intertwining(EmbeddingSpec{2, 0, -1}, ModuleContext(2, 1, -6, 6)).ok());
  const auto rep = qembed::verify_intertwining(EmbeddingSpec{3, 2, +1}, ModuleContext(3, 2, -4, 4));
  CHECK(rep.ok());
  bool saw_extra = false;
  for (const auto& c : rep.checks) saw_extra |= c.tag == "extra-terms-vanish";
  CHECK(saw_extra);
  CHECK(qembed::verify_coproduct_identity(EmbeddingSpec{2, 0, -1}, -4, 4).ok());
  CHECK(qembed::verify_coproduct_identity(EmbeddingSpec{2, 0, +1}, -4, 4).ok());
}

TEST_CASE("gl elements") {
  const EmbeddingSpec s{2, 1, -1};
  CHECK(qembed::gl_image_l(s, 1) == X("K1", 3));
  CHECK(qembed::gl_image_l(s, 2) == X("K2^-1", 3));
  CHECK(qembed::gl_image_l(s, 3) == qembed::gl_image_l(s, 1));
  CHECK(qembed::gl_image_l(EmbeddingSpec{3, 2, -1}, 1) == X("K1*K2", 4));
  CHECK(qembed::gl_image_l_inverse(EmbeddingSpec{3, 2, -1}, 1) == X("K2^-1*K1^-1", 4));
  CHECK(qembed::verify_gl_suite(s, ModuleContext(3, 1, -6, 6)).ok());
}

TEST_CASE("classical oracle") {
  using qembed::RationalMatrix;
  const RationalMatrix h = RationalMatrix::from_rows({{1, 0}, {0, -1}});
  CHECK(qembed::classical_embed(h, 1, qembed::ClassicalVariant::sl) ==
        RationalMatrix::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}));
  const RationalMatrix d = RationalMatrix::from_rows({{2, 0}, {0, 3}});
  CHECK(qembed::classical_embed(d, 1, qembed::ClassicalVariant::gl) ==
        RationalMatrix::from_rows({{2, 0, 0}, {0, -5, 0}, {0, 0, 3}}));
  CHECK(qembed::classical_embed(d, 0, qembed::ClassicalVariant::gl).at(0, 0) == -5);
  CHECK(qembed::classical_embed(d, 2, qembed::ClassicalVariant::gl).at(2, 2) == -5);
  CHECK_THROWS(qembed::classical_embed(d, 3, qembed::ClassicalVariant::gl));
  CHECK(qembed::verify_classical_oracle(3, 10, 7).ok());
}
