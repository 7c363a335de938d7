#include <charsheaf/matrix.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using charsheaf::Cyclotomic;
using charsheaf::LaurentPoly;
using charsheaf::Matrix;

namespace {
LaurentPoly q(int e2) { return LaurentPoly::q_power(e2); }
}  // namespace

TEST_CASE("unitriangular inverse on the 2x2 example", "[matrix]") {
  CHECK(charsheaf::unitriangular_inverse(Matrix<LaurentPoly>::identity(4)) ==
        Matrix<LaurentPoly>::identity(4));

  Matrix<LaurentPoly> m(2, 2);
  m.at(0, 0) = LaurentPoly(1);
  m.at(0, 1) = q(-2);
  m.at(1, 1) = LaurentPoly(1);
  Matrix<LaurentPoly> inv = charsheaf::unitriangular_inverse(m);
  CHECK(inv.at(0, 1) == LaurentPoly() - q(-2));
  CHECK((m * inv).is_identity());
}

TEST_CASE("unitriangular inverse rejects bad input", "[matrix]") {
  Matrix<LaurentPoly> bad_diag = Matrix<LaurentPoly>::identity(3);
  bad_diag.at(1, 1) = q(2);
  CHECK_THROWS_AS(charsheaf::unitriangular_inverse(bad_diag),
                  std::invalid_argument);

  Matrix<LaurentPoly> bad_below = Matrix<LaurentPoly>::identity(3);
  bad_below.at(2, 0) = LaurentPoly(1);
  CHECK_THROWS_AS(charsheaf::unitriangular_inverse(bad_below),
                  std::invalid_argument);

  Matrix<LaurentPoly> rect(2, 3);
  CHECK_THROWS_AS(charsheaf::unitriangular_inverse(rect), std::invalid_argument);
}

TEST_CASE("unitriangular inverse multiplies back to the identity", "[matrix]") {
  std::mt19937 rng(7);
  // One 5x5 spot check plus the 100-matrix sweep (sizes up to 8, entry
  // exponents up to q^{+-4}).
  Matrix<LaurentPoly> m5 = test_util::random_unitriangular(rng, 5);
  CHECK((m5 * charsheaf::unitriangular_inverse(m5)).is_identity());

  std::uniform_int_distribution<std::size_t> size(1, 8);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix<LaurentPoly> m = test_util::random_unitriangular(rng, size(rng));
    Matrix<LaurentPoly> inv = charsheaf::unitriangular_inverse(m);
    CHECK((m * inv).is_identity());
    CHECK((inv * m).is_identity());
  }
}

TEST_CASE("ptilde_star_inverse on the 2x2 example", "[matrix]") {
  Matrix<LaurentPoly> p(2, 2);
  p.at(0, 0) = LaurentPoly(1);
  p.at(0, 1) = q(-2);
  p.at(1, 1) = LaurentPoly(1);
  Matrix<LaurentPoly> r = charsheaf::ptilde_star_inverse(p);
  CHECK(r.at(0, 0).is_one());
  CHECK(r.at(0, 1) == q(-2) - q(2));
  CHECK(r.at(1, 0).is_zero());
  CHECK(r.at(1, 1).is_one());

  CHECK(charsheaf::ptilde_star_inverse(Matrix<LaurentPoly>::identity(3)) ==
        Matrix<LaurentPoly>::identity(3));
}

TEST_CASE("ptilde_star_inverse satisfies R * P* = P", "[matrix]") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<LaurentPoly> p = test_util::random_unitriangular(rng, 4);
    Matrix<LaurentPoly> r = charsheaf::ptilde_star_inverse(p);
    Matrix<LaurentPoly> pstar(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) pstar.at(i, j) = p.at(i, j).star();
    CHECK(r * pstar == p);
  }
}

TEST_CASE("field_solve inverts cyclotomic matrices exactly", "[matrix]") {
  // Vandermonde in the 5th roots of unity.
  Cyclotomic z = Cyclotomic::root_of_unity(5);
  Matrix<Cyclotomic> v(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v.at(i, j) = z.pow((i + 1) * j);
  Matrix<Cyclotomic> inv = charsheaf::field_inverse(v);
  CHECK((v * inv).is_identity());
  CHECK((inv * v).is_identity());

  Matrix<Cyclotomic> sing(2, 2);
  sing.at(0, 0) = Cyclotomic(1);
  sing.at(0, 1) = Cyclotomic(2);
  sing.at(1, 0) = Cyclotomic(2);
  sing.at(1, 1) = Cyclotomic(4);
  CHECK_THROWS_AS(charsheaf::field_inverse(sing), std::runtime_error);
}
