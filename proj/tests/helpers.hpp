#pragma once

// Shared helpers for the test suite: deterministic pseudo-random generators
// for exact values. Seeds are fixed by the callers so failures reproduce.

#include <charsheaf/cyclotomic.hpp>
#include <charsheaf/laurent.hpp>
#include <charsheaf/matrix.hpp>

#include <random>

namespace test_util {

inline charsheaf::Cyclotomic random_cyclotomic(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> small(-3, 3);
  switch (kind(rng)) {
    case 0:
      return charsheaf::Cyclotomic(small(rng));
    case 1:
      return charsheaf::Cyclotomic(charsheaf::make_rational(small(rng), 2));
    case 2:
      return charsheaf::Cyclotomic::root_of_unity(3, 1) * small(rng);
    default:
      return charsheaf::Cyclotomic::root_of_unity(4, 1) +
             charsheaf::Cyclotomic(small(rng));
  }
}

// A Laurent polynomial with exponents in [-max_e2, max_e2] half-steps.
inline charsheaf::LaurentPoly random_laurent(std::mt19937& rng, int max_e2 = 8,
                                             int n_terms = 3) {
  std::uniform_int_distribution<int> expo(-max_e2, max_e2);
  charsheaf::LaurentPoly f;
  for (int t = 0; t < n_terms; ++t)
    f = f + charsheaf::LaurentPoly::monomial(random_cyclotomic(rng), expo(rng));
  return f;
}

// Random upper unitriangular matrix over LaurentPoly.
inline charsheaf::Matrix<charsheaf::LaurentPoly> random_unitriangular(
    std::mt19937& rng, std::size_t n, int max_e2 = 8) {
  charsheaf::Matrix<charsheaf::LaurentPoly> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = charsheaf::LaurentPoly(1);
    for (std::size_t j = i + 1; j < n; ++j)
      m.at(i, j) = random_laurent(rng, max_e2, 2);
  }
  return m;
}

}  // namespace test_util
