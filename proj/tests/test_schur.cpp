#include <doctest.h>

#include "qembed/schur.hpp"

using qembed::CosetX;
using qembed::CoweightY;
using qembed::IntSeq;

TEST_CASE("coset canonical representative") {
  CHECK(CosetX({2, 1}).representative() == IntSeq{1, 0});
  CHECK(CosetX({-3, -3, -2}).representative() == IntSeq{0, 0, 1});
  CHECK(CosetX({5, 5, 5}) == CosetX({0, 0, 0}));
  CHECK(CosetX({1, 2}).to_string() == "coset(0,1)");
  CHECK_THROWS_AS(CosetX(IntSeq{}), std::invalid_argument);
}

TEST_CASE("f and g") {
  CHECK(qembed::y_insert(IntSeq{1, -1}, 1) == IntSeq{1, 0, -1});
  CHECK(qembed::y_insert(IntSeq{1, -1}, 0) == IntSeq{0, 1, -1});
  CHECK_THROWS_AS(qembed::y_insert(IntSeq{1, -1}, 3), std::invalid_argument);
  CHECK(qembed::y_insert(qembed::Composition{{2, 1}}, 1).parts == std::vector<int>{2, 0, 1});

  CHECK(qembed::f_d(CosetX({2, 1}), 3, 1) == CosetX({2, 0, 1}));
  CHECK(qembed::f_d(CosetX({0, 0}), 2, 1) == CosetX({1, 0, 1}));
  CHECK(qembed::f_d(CosetX({2, 1}), 3, 1).representative() == IntSeq{1, -1, 0});
  CHECK_THROWS_AS(qembed::f_d(CosetX({0, 0}), 1, 0), std::domain_error);

  CHECK(qembed::x_contract(CosetX({2, 0, 1}), 1) == CosetX({2, 1}));
  CHECK_THROWS_AS(qembed::x_contract(CosetX({2, 0, 1}), 2), std::invalid_argument);
}

TEST_CASE("pairing") {
  CHECK(qembed::pairing(qembed::simple_coroot(2, 0), qembed::simple_root(2, 1)) == -2);
  CHECK(qembed::pairing(qembed::simple_coroot(2, 0), qembed::simple_root(2, 0)) == 2);
  CHECK(qembed::pairing(qembed::simple_coroot(3, 0), qembed::simple_root(3, 1)) == -1);
  CHECK(qembed::simple_coroot(3, 0).entries == IntSeq{-1, 0, 1});
  CHECK(qembed::simple_coroot(3, 1).entries == IntSeq{1, -1, 0});
  CHECK_THROWS_AS(qembed::pairing(CoweightY{{1, 0}}, CosetX({0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(qembed::pairing(CoweightY{{1, -1}}, CosetX({0, 0, 0})), std::invalid_argument);
  // Well defined on classes.
  CHECK(qembed::pairing(CoweightY{{2, -1, -1}}, CosetX({3, 0, 1})) ==
        qembed::pairing(CoweightY{{2, -1, -1}}, CosetX({4, 1, 2})));
}

TEST_CASE("datum checks") {
  for (int n = 2; n <= 4; ++n)
    for (int r = 0; r < n; ++r) {
      CHECK(qembed::pairing_adjointness_check(n, r).ok());
      CHECK(qembed::root_datum_checks(n, r, 3).ok());
    }
  CHECK_THROWS_AS(qembed::pairing_adjointness_check(2, 2), std::invalid_argument);
}

TEST_CASE("Schur compatibility") {
  const auto rep = qembed::verify_schur_compatibility(qembed::EmbeddingSpec{2, 1, -1}, qembed::ModuleContext(2, 2, -4, 4));
  CHECK(rep.ok());
  std::size_t transports = 0;
  for (const auto& c : rep.checks) transports += c.tag == "transport";
  CHECK(transports == 3 * 4);
  CHECK_THROWS_AS(
      qembed::verify_schur_compatibility(qembed::EmbeddingSpec{2, 1, -1}, qembed::ModuleContext(3, 1, -4, 4)),
      std::invalid_argument);
}
