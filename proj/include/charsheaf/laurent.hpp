#pragma once

// Laurent polynomials in q^{1/2} with Cyclotomic coefficients.
//
// Exponents are stored as integers counting half-steps: the map key e stands
// for q^{e/2}, so whole powers of q sit at even keys. Two operations matter
// beyond ring arithmetic: star, which substitutes q -> q^{-1} (negating every
// exponent), and coefficient conjugation, which conjugates the Cyclotomic
// coefficients and leaves q alone. They are distinct and both are needed.

#include <charsheaf/cyclotomic.hpp>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace charsheaf {

class LaurentPoly {
 public:
  LaurentPoly() = default;

  LaurentPoly(const Cyclotomic& c) {
    if (!c.is_zero()) terms_[0] = c;
  }
  LaurentPoly(long v) : LaurentPoly(Cyclotomic(v)) {}

  // c * q^{e2/2}.
  static LaurentPoly monomial(const Cyclotomic& c, int e2) {
    LaurentPoly p;
    if (!c.is_zero()) p.terms_[e2] = c;
    return p;
  }
  // q^{e2/2}.
  static LaurentPoly q_power(int e2) { return monomial(Cyclotomic(1), e2); }

  const std::map<int, Cyclotomic>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 &&
           terms_.begin()->second.is_one();
  }

  // Coefficient of q^{e2/2} (zero if absent).
  Cyclotomic coefficient(int e2) const {
    auto it = terms_.find(e2);
    return it == terms_.end() ? Cyclotomic() : it->second;
  }

  // f*(q) = f(q^{-1}): negate every exponent.
  LaurentPoly star() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[-e] = c;
    return out;
  }

  // Conjugate the coefficients; q is fixed (q is "real").
  LaurentPoly conj_coefficients() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[e] = c.conj();
    return out;
  }

  LaurentPoly operator-() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b.terms_) {
      auto it = out.terms_.find(e);
      if (it == out.terms_.end()) {
        out.terms_[e] = c;
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
    return out;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return a + (-b);
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Cyclotomic prod = ca * cb;
        if (prod.is_zero()) continue;
        auto it = out.terms_.find(ea + eb);
        if (it == out.terms_.end()) {
          out.terms_[ea + eb] = prod;
        } else {
          it->second = it->second + prod;
          if (it->second.is_zero()) out.terms_.erase(it);
        }
      }
    }
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = a.terms_.begin(), jt = b.terms_.begin();
    for (; it != a.terms_.end(); ++it, ++jt)
      if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      if (e == 0) {
        os << "(" << c.to_string() << ")";
        continue;
      }
      if (!c.is_one()) os << "(" << c.to_string() << ")*";
      os << "q";
      if (e != 2) {
        if (e % 2 == 0)
          os << "^" << (e / 2);
        else
          os << "^(" << e << "/2)";
      }
    }
    return os.str();
  }

 private:
  std::map<int, Cyclotomic> terms_;  // exponent in half-steps -> coefficient
};

inline LaurentPoly star(const LaurentPoly& f) { return f.star(); }

}  // namespace charsheaf
