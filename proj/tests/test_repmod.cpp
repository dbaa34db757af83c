#include <doctest.h>

#include <omp.h>

#include "qembed/repmod.hpp"

using qembed::AlgebraExpression;
using qembed::GeneratorSymbol;
using qembed::ModuleContext;
using qembed::RationalFunction;
using qembed::TensorVector;
using qembed::make_key;

namespace {
const RationalFunction v = RationalFunction::v_power(1);
const RationalFunction vi = RationalFunction::v_power(-1);
AlgebraExpression X(const char* s, int m) { return AlgebraExpression::parse(s, m); }
TensorVector U(const ModuleContext& c, std::initializer_list<int> k) { return TensorVector::basis(c, make_key(k)); }
}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS_AS(ModuleContext(1, 1, -8, 8), std::invalid_argument);
  CHECK_THROWS_AS(ModuleContext(2, 0, -8, 8), std::invalid_argument);
  CHECK_THROWS_AS(ModuleContext(2, 9, -8, 8), std::invalid_argument);
  CHECK_THROWS_AS(ModuleContext(2, 1, 3, 3), std::invalid_argument);
  const ModuleContext c(2, 2, -2, 2);
  CHECK(c.keys_with_margin(0).size() == 25);
  CHECK(c.keys_with_margin(2).size() == 1);
  CHECK(c.keys_with_margin(3).empty());
  CHECK(c.residue(-3) == 1);
}

TEST_CASE("generator action examples") {
  const ModuleContext c1(2, 1, -8, 8);
  CHECK(qembed::act_generator(c1, GeneratorSymbol::E(0), make_key({1})) == U(c1, {0}));
  CHECK(qembed::act_generator(c1, GeneratorSymbol::K(1), make_key({1})) == v * U(c1, {1}));
  CHECK(qembed::act_generator(c1, GeneratorSymbol::K(1, -1), make_key({1})) == vi * U(c1, {1}));
  CHECK(qembed::act_generator(c1, GeneratorSymbol::F(0), make_key({0})) == U(c1, {1}));
  CHECK(qembed::act_generator(c1, GeneratorSymbol::F(0), make_key({1})).is_zero());

  const ModuleContext c2(2, 2, -8, 8);
  CHECK(qembed::act_generator(c2, GeneratorSymbol::E(0), make_key({1, 1})) == U(c2, {0, 1}) + vi * U(c2, {1, 0}));
  // F_i picks up K_i^{-1} from the factors to its right.
  CHECK(qembed::act_generator(c2, GeneratorSymbol::F(0), make_key({0, 0})) == vi * U(c2, {1, 0}) + U(c2, {0, 1}));
}

TEST_CASE("margin violations are rejected") {
  const ModuleContext c(2, 1, -3, 3);
  CHECK_THROWS_AS(qembed::act_generator(c, GeneratorSymbol::E(0), make_key({-3})), qembed::MarginError);
  CHECK_THROWS_AS(qembed::act_expression(c, X("E0*E1", 2), U(c, {2})), qembed::MarginError);
  CHECK_NOTHROW(qembed::act_expression(c, X("E0*E1", 2), U(c, {1})));
  CHECK_THROWS_AS(qembed::act_expression(c, X("E0", 3), U(c, {0})), qembed::AlphabetMismatch);
  try {
    qembed::act_expression(c, X("E0*E1*E0", 2), U(c, {1}));
    FAIL("expected a margin error");
  } catch (const qembed::MarginError& e) {
    const std::string what = e.what();
    CHECK(what.find("u[1]") != std::string::npos);
    CHECK(what.find('3') != std::string::npos);
  }
}

TEST_CASE("expression action examples") {
  const ModuleContext c(2, 1, -8, 8);
  const TensorVector u0 = U(c, {0});
  CHECK(qembed::act_expression(c, AlgebraExpression::unit(2), u0) == u0);
  const TensorVector u5 = U(c, {5}) + U(c, {-2});
  CHECK(qembed::act_expression(c, AlgebraExpression::scalar(2, v + vi), u5) == (v + vi) * u5);

  const AlgebraExpression comm = X("E0*F0 - F0*E0", 2);
  const AlgebraExpression kk = X("(K0 - K0^-1)/(v - v^-1)", 2);
  // On u_0: E_0 F_0 u_0 = u_0, F_0 E_0 u_0 = 0, and K_0 u_0 = v u_0.
  CHECK(qembed::act_expression(c, comm, u0) == u0);
  CHECK(qembed::act_expression(c, kk, u0) == u0);
  // On u_1: E_0 F_0 u_1 = 0, F_0 E_0 u_1 = u_1.
  CHECK(qembed::act_expression(c, comm, U(c, {1})) == RationalFunction(-1) * U(c, {1}));
  CHECK(qembed::act_expression(c, kk, U(c, {1})) == RationalFunction(-1) * U(c, {1}));
}

TEST_CASE("operator equality") {
  for (int m : {2, 3})
    for (int d : {1, 2}) {
      const ModuleContext c(m, d, -4, 4);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          const std::string a = "E" + std::to_string(i) + "*F" + std::to_string(j) + " - F" + std::to_string(j) +
                                "*E" + std::to_string(i);
          const std::string b =
              i == j ? "(K" + std::to_string(i) + " - K" + std::to_string(i) + "^-1)/(v - v^-1)" : std::string("0");
          CAPTURE(a);
          CHECK(qembed::operators_equal_on_window(c, X(a.c_str(), m), X(b.c_str(), m)).equal);
        }
    }
  const ModuleContext c(2, 1, -4, 4);
  const auto same = qembed::operators_equal_on_window(c, X("E0*E1", 2), X("E0*E1", 2));
  CHECK(same.equal);
  CHECK(same.keys_checked == 5);

  const auto diff = qembed::operators_equal_on_window(c, X("E0*F0", 2), X("F0*E0", 2));
  CHECK_FALSE(diff.equal);
  REQUIRE(diff.key);
  CHECK((*diff.key)[0] == -2);
  CHECK(diff.lhs->to_string() != diff.rhs->to_string());
  CHECK(diff.witness(c).find("u[-2]") != std::string::npos);

  CHECK_THROWS_AS(qembed::operators_equal_on_window(ModuleContext(2, 1, -1, 1), X("E0*E1", 2), X("0", 2)),
                  qembed::MarginError);
}

TEST_CASE("parallel and serial comparison agree") {
  const ModuleContext c(3, 2, -5, 5);
  const AlgebraExpression a = X("E0*E1*F1 - v*F1*E1*E0", 3);
  const AlgebraExpression b = X("E0*F1*E1 - F1*E0*E1", 3);
  const int saved = omp_get_max_threads();
  for (int t : {1, 2, 4}) {
    omp_set_num_threads(t);
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{a, a}, std::pair{b, a}}) {
      const auto par = qembed::operators_equal_on_window(c, x, y);
      const auto ser = qembed::operators_equal_on_window_serial(c, x, y);
      CHECK(par.equal == ser.equal);
      CHECK(par.keys_checked == ser.keys_checked);
      CHECK(par.key == ser.key);
      if (!par.equal) CHECK(par.witness(c) == ser.witness(c));
    }
  }
  omp_set_num_threads(saved);
}

TEST_CASE("tensor vector text") {
  const ModuleContext c(2, 2, -8, 8);
  const TensorVector x = U(c, {0, 1}) + (v + vi) * U(c, {-3, 2}) - RationalFunction(mpq_class(1, 2)) * U(c, {4, 4});
  CHECK(TensorVector::parse(x.to_string(), c) == x);
  CHECK(TensorVector(c).to_string() == "0");
  CHECK(TensorVector::parse("0", c).is_zero());
  CHECK(TensorVector::parse("u[0,1] + v*u[1,1] - u[0,1]", c) == v * U(c, {1, 1}));
  CHECK(TensorVector::parse("(v^2-1)/(v-1) * u[0,0]", c) == (v + 1) * U(c, {0, 0}));
  CHECK_THROWS_AS(TensorVector::parse("u[0]", c), qembed::ParseError);
  CHECK_THROWS_AS(TensorVector::parse("u[0,1] +", c), qembed::ParseError);
  CHECK_THROWS_AS(TensorVector::parse("u[0,9]", c), qembed::ParseError);
}

TEST_CASE("weights") {
  CHECK(qembed::weight_of_key(ModuleContext(2, 2, -8, 8), make_key({0, 1})).parts == std::vector<int>{1, 1});
  CHECK(qembed::weight_of_key(ModuleContext(3, 3, -8, 8), make_key({1, 1, 4})).parts == std::vector<int>{3, 0, 0});
  CHECK(qembed::weight_of_key(ModuleContext(2, 1, -8, 8), make_key({2})).parts == std::vector<int>{0, 1});
  CHECK(qembed::weight_of_key(ModuleContext(3, 2, -8, 8), make_key({-1, -3})).parts == std::vector<int>{0, 1, 1});

  const ModuleContext c(2, 2, -8, 8);
  const TensorVector x = U(c, {1, 1}) + U(c, {0, 1});
  const qembed::Composition l20{{2, 0}};
  CHECK(qembed::project_weight(c, l20, x) == U(c, {1, 1}));
  CHECK(qembed::project_weight(c, l20, qembed::project_weight(c, l20, x)) == qembed::project_weight(c, l20, x));
  TensorVector sum(c);
  for (const auto& l : qembed::compositions(2, 2)) sum += qembed::project_weight(c, l, x);
  CHECK(sum == x);
  CHECK_THROWS_AS(qembed::project_weight(c, qembed::Composition{{1, 0}}, x), std::invalid_argument);
}

TEST_CASE("compositions") {
  const auto cs = qembed::compositions(3, 2);
  REQUIRE(cs.size() == 6);
  CHECK(cs.front().to_string() == "(2,0,0)");
  CHECK(cs.back().to_string() == "(0,0,2)");
  CHECK(qembed::compositions(2, 0).size() == 1);
}

TEST_CASE("coproduct") {
  const AlgebraExpression e = X("E0", 2), f = X("F1", 2), k = X("K0^-1", 2);
  const auto de = qembed::coproduct(e);
  REQUIRE(de.size() == 2);
  const auto df = qembed::coproduct(f);
  REQUIRE(df.size() == 2);
  CHECK(qembed::coproduct(k).size() == 1);

  // Coassociativity on generators and a few products.
  for (const char* s : {"E0", "F1", "K1", "K0^-1", "E0*F0 - v*F1*E1"})
    for (int d : {2, 3}) {
      const ModuleContext c(2, d, -4, 4);
      const AlgebraExpression x = X(s, 2);
      CAPTURE(s);
      CAPTURE(d);
      CHECK(qembed::tensor_operators_equal_on_window(c, qembed::iterated_coproduct(x, d, qembed::CoproductOrder::left),
                                                     qembed::iterated_coproduct(x, d, qembed::CoproductOrder::right))
                .equal);
    }
}

TEST_CASE("relation suite") {
  for (int n : {2, 3}) {
    const auto rep = qembed::relation_suite(ModuleContext(n, 2, -6, 6), qembed::identity_realization(n), n);
    CHECK(rep.ok());
    CHECK(rep.checks.size() > 0);
  }
  // A wrong realization is caught: swap E_0 and F_0.
  auto bad = qembed::identity_realization(2);
  std::swap(bad.at(GeneratorSymbol::E(0)), bad.at(GeneratorSymbol::F(0)));
  const auto rep = qembed::relation_suite(ModuleContext(2, 1, -6, 6), bad, 2);
  CHECK_FALSE(rep.ok());
  for (const auto& c : rep.checks)
    if (!c.passed) CHECK(c.witness);
}
