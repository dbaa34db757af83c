#include <doctest.h>

#include "qembed/embed.hpp"
#include "qembed/expr.hpp"

using qembed::AlgebraExpression;
using qembed::GeneratorSymbol;
using qembed::RationalFunction;

namespace {
AlgebraExpression X(const char* s, int m) { return AlgebraExpression::parse(s, m); }
AlgebraExpression E(int m, int i) { return AlgebraExpression::generator(m, GeneratorSymbol::E(i)); }
const RationalFunction v = RationalFunction::v_power(1);
}  // namespace

TEST_CASE("expression arithmetic") {
  const int m = 3;
  CHECK(E(m, 0) * AlgebraExpression::unit(m) == E(m, 0));
  CHECK((E(m, 0) + E(m, 1)) * E(m, 2) == E(m, 0) * E(m, 2) + E(m, 1) * E(m, 2));
  const AlgebraExpression a = E(m, 0) * E(m, 1) - v * (E(m, 1) * E(m, 0));
  CHECK(a + v * (E(m, 1) * E(m, 0)) == E(m, 0) * E(m, 1));
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(E(2, 0) + E(3, 0), qembed::AlphabetMismatch);
}

TEST_CASE("K words are not reduced") {
  const AlgebraExpression k = X("K0*K0^-1", 2);
  CHECK_FALSE(k.as_scalar());
  CHECK(qembed::word_length_bound(k) == 2);
  CHECK(qembed::inverse_k_word(X("2*K0*K1^-1", 2)) == X("1/2*K1*K0^-1", 2));
  CHECK_THROWS_AS(qembed::inverse_k_word(X("K0 + K1", 2)), std::invalid_argument);
  CHECK_THROWS_AS(qembed::inverse_k_word(X("E0", 2)), std::invalid_argument);
}

TEST_CASE("divided powers") {
  CHECK(qembed::divided_power(E(2, 0), 1) == E(2, 0));
  CHECK(qembed::divided_power(E(2, 0), 0) == AlgebraExpression::unit(2));
  CHECK(qembed::divided_power(E(2, 0), 2) == (RationalFunction(1) / (v + v.inverse())) * (E(2, 0) * E(2, 0)));
  CHECK(qembed::divided_power(E(2, 0), 3) == (RationalFunction(1) / qembed::qfact(3)) * E(2, 0).pow(3));
  CHECK_THROWS_AS(qembed::divided_power(E(2, 0), -1), std::invalid_argument);
}

TEST_CASE("parser examples") {
  const AlgebraExpression a = X("E0*E1 - v^1*E1*E0", 2);
  REQUIRE(a.terms().size() == 2);
  CHECK(a.terms().at({GeneratorSymbol::E(0), GeneratorSymbol::E(1)}) == RationalFunction(1));
  CHECK(a.terms().at({GeneratorSymbol::E(1), GeneratorSymbol::E(0)}) == -v);

  const AlgebraExpression k = X("K2^-1", 3);
  REQUIRE(k.terms().size() == 1);
  const auto& w = k.terms().begin()->first;
  REQUIRE(w.size() == 1);
  CHECK(w[0].kind == qembed::GenKind::K);
  CHECK(w[0].index == 2);
  CHECK(w[0].kexp == -1);

  CHECK(X("E0^(2)", 2) == qembed::divided_power(E(2, 0), 2));
  CHECK(X("(v + v^-1)*E0*F1/2", 2) == (v + v.inverse()) / 2 * X("E0*F1", 2));
  CHECK(X("  E0 *  E1 ", 2) == E(2, 0) * E(2, 1));
  CHECK(X("0", 2).is_zero());
  CHECK(X("3/4", 2).as_scalar() == RationalFunction(mpq_class(3, 4)));
}

TEST_CASE("parser errors") {
  CHECK_THROWS_AS(X("E2", 2), qembed::ParseError);
  CHECK_THROWS_AS(X("E0 +", 2), qembed::ParseError);
  CHECK_THROWS_AS(X("K0^2", 2), qembed::ParseError);
  CHECK_THROWS_AS(X("E0/E1", 2), qembed::ParseError);
  CHECK_THROWS_AS(X("E0/0", 2), qembed::ParseError);
  CHECK_THROWS_AS(X("G0", 2), qembed::ParseError);
  try {
    X("E0*E7", 3);
    FAIL("expected a parse error");
  } catch (const qembed::ParseError& e) {
    CHECK(e.position() == 4);  // the offending index
  }
}

TEST_CASE("pretty printer round trip") {
  for (const char* s : {"E0*E1 - v*E1*E0", "K2^-1", "E0^(2)", "(v^2 - 1)/(v + 3)*F1*K0 + 7", "0", "-E1",
                        "v^-2*K0*K0^-1 - 1/3*E2*F2*E2"}) {
    const AlgebraExpression x = X(s, 3);
    CAPTURE(s);
    CAPTURE(x.to_string());
    CHECK(X(x.to_string().c_str(), 3) == x);
  }
}

TEST_CASE("substitution") {
  qembed::GeneratorImages img;
  img.insert_or_assign(GeneratorSymbol::E(0), E(3, 0));
  CHECK(qembed::substitute_generators(E(2, 0) * E(2, 0), img, 3) == E(3, 0) * E(3, 0));
  CHECK_THROWS_AS(qembed::substitute_generators(E(2, 1), img, 3), qembed::MissingImage);
  img.insert_or_assign(GeneratorSymbol::E(1), E(2, 1));
  CHECK_THROWS_AS(qembed::substitute_generators(E(2, 1), img, 3), qembed::AlphabetMismatch);

  const qembed::EmbeddingSpec a{2, 0, -1};
  CHECK(qembed::substitute_generators(E(2, 1), qembed::image_realization(a), 3) == E(3, 2));
  const qembed::EmbeddingSpec b{3, 1, +1};
  CHECK(qembed::substitute_generators(E(3, 1), qembed::image_realization(b), 4) ==
        E(4, 1) * E(4, 2) - v * (E(4, 2) * E(4, 1)));
}

TEST_CASE("word length bound") {
  CHECK(qembed::word_length_bound(X("E0*E1 - v*E1*E0", 2)) == 2);
  CHECK(qembed::word_length_bound(X("5", 2)) == 0);
  CHECK(qembed::word_length_bound(AlgebraExpression(2)) == 0);
  const qembed::EmbeddingSpec s{2, 0, -1};
  const AlgebraExpression er = qembed::image_generator(s, GeneratorSymbol::E(0));
  CHECK(qembed::word_length_bound(qembed::divided_power(er, 2)) == 4);
}
