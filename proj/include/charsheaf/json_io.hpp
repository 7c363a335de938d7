#pragma once

// JSON views of the exact arithmetic types, shared by the command-line tool
// and its integration tests. All objects use ordered_json so that key order
// is the insertion order fixed here, which keeps serialized output
// byte-stable across runs.
//
// Conventions:
//   * cyclotomics serialize as {"order": N, "coeffs": [..]} where coeffs are
//     the power-basis coordinates as exact rational strings,
//   * Laurent polynomials map printed exponents of q to cyclotomic
//     coefficients; half-integer exponents print as fractions ("-1/2"),
//   * matrices are row-major with explicit "rows" and "cols".

#include <cstddef>
#include <string>

#include "json.hpp"

#include "charsheaf/cyclotomic.hpp"
#include "charsheaf/laurent.hpp"
#include "charsheaf/matrix.hpp"

namespace charsheaf {

inline nlohmann::ordered_json cyclotomic_to_json(const Cyclotomic& value) {
  nlohmann::ordered_json out;
  out["order"] = value.order();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const Rational& r : value.coeffs()) coeffs.push_back(rational_to_string(r));
  out["coeffs"] = std::move(coeffs);
  return out;
}

// Exponents of q are stored in half-steps; the printed key is the true
// exponent, so the half-step 6 prints as "3" and the half-step -1 as "-1/2".
inline std::string q_exponent_key(int e2) {
  if (e2 % 2 == 0) return std::to_string(e2 / 2);
  return std::to_string(e2) + "/2";
}

inline nlohmann::ordered_json laurent_to_json(const LaurentPoly& value) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [e2, coeff] : value.terms())
    out[q_exponent_key(e2)] = cyclotomic_to_json(coeff);
  return out;
}

template <typename T, typename EntryFn>
nlohmann::ordered_json matrix_to_json_with(const Matrix<T>& m, EntryFn entry) {
  nlohmann::ordered_json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry(m.at(i, j)));
    entries.push_back(std::move(row));
  }
  out["entries"] = std::move(entries);
  return out;
}

inline nlohmann::ordered_json matrix_to_json(const Matrix<Cyclotomic>& m) {
  return matrix_to_json_with(m, [](const Cyclotomic& c) { return cyclotomic_to_json(c); });
}

inline nlohmann::ordered_json matrix_to_json(const Matrix<LaurentPoly>& m) {
  return matrix_to_json_with(m, [](const LaurentPoly& f) { return laurent_to_json(f); });
}

}  // namespace charsheaf
