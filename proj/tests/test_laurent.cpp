#include <charsheaf/laurent.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using charsheaf::Cyclotomic;
using charsheaf::LaurentPoly;

namespace {
LaurentPoly q(int e2) { return LaurentPoly::q_power(e2); }
}  // namespace

TEST_CASE("star negates exponents and fixes coefficients", "[laurent]") {
  // q + 2 -> q^{-1} + 2.
  LaurentPoly f = q(2) + LaurentPoly(2);
  CHECK(f.star() == q(-2) + LaurentPoly(2));

  // 0 -> 0.
  CHECK(LaurentPoly().star() == LaurentPoly());

  // q^{3/2} - theta*q^{-1} -> q^{-3/2} - theta*q.
  Cyclotomic theta = Cyclotomic::root_of_unity(3);
  LaurentPoly g = q(3) - LaurentPoly::monomial(theta, -2);
  CHECK(g.star() == q(-3) - LaurentPoly::monomial(theta, 2));
}

TEST_CASE("star is an involution and a ring homomorphism", "[laurent]") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentPoly f = test_util::random_laurent(rng);
    LaurentPoly g = test_util::random_laurent(rng);
    CHECK(f.star().star() == f);
    CHECK((f * g).star() == f.star() * g.star());
    CHECK((f + g).star() == f.star() + g.star());
  }
}

TEST_CASE("no zero coefficients survive arithmetic", "[laurent]") {
  LaurentPoly f = q(2) + LaurentPoly(1);
  CHECK((f - f).terms().empty());
  LaurentPoly prod = (q(2) + LaurentPoly(1)) * (q(2) - LaurentPoly(1));
  CHECK(prod == q(4) - LaurentPoly(1));
  CHECK(prod.terms().size() == 2);
}

TEST_CASE("coefficient conjugation fixes q", "[laurent]") {
  Cyclotomic theta = Cyclotomic::root_of_unity(3);
  LaurentPoly f = LaurentPoly::monomial(theta, 3) + q(-4);
  LaurentPoly fc = f.conj_coefficients();
  CHECK(fc == LaurentPoly::monomial(theta * theta, 3) + q(-4));
  CHECK(fc.conj_coefficients() == f);
}

TEST_CASE("half-integer exponents are kept in half-steps", "[laurent]") {
  LaurentPoly f = q(1);  // q^{1/2}
  CHECK(f * f == q(2));
  CHECK(f.coefficient(1).is_one());
  CHECK(f.coefficient(2).is_zero());
  CHECK((q(1) * q(-1)).is_one());
}
