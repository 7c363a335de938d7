#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A value is a rational coordinate vector with respect to the power basis
// 1, z, z^2, ..., z^{phi(N)-1} of Q(zeta_N), where z = exp(2*pi*i/N) and
// phi is Euler's totient. Products are reduced modulo the N-th cyclotomic
// polynomial Phi_N, so the representation of a value at a fixed order is
// unique and equality is coordinate equality. Values carried at different
// orders are compared after embedding both into Q(zeta_lcm).
//
// Rationals are GMP mpq_class throughout; nothing here ever rounds.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace charsheaf {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

namespace detail {

inline long euler_phi(long n) {
  if (n <= 0) throw std::invalid_argument("euler_phi: order must be positive");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

// Dense univariate polynomials over Q, lowest degree first, used only to
// build the cyclotomic polynomials and their reduction tables.
using RatPoly = std::vector<Rational>;

inline void rp_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division, asserting zero remainder.
inline RatPoly rp_divide_exact(RatPoly num, const RatPoly& den) {
  RatPoly quot(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0,
               Rational(0));
  while (num.size() >= den.size()) {
    Rational lead = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    quot[shift] = lead;
    for (std::size_t i = 0; i < den.size(); ++i)
      num[shift + i] -= lead * den[i];
    rp_trim(num);
    if (num.empty()) break;
  }
  if (!num.empty())
    throw std::logic_error("rp_divide_exact: nonzero remainder");
  return quot;
}

// Phi_n, computed from x^n - 1 = prod_{d | n} Phi_d. Memoized.
inline const RatPoly& cyclotomic_polynomial(long n) {
  static std::map<long, RatPoly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Compute iteratively so the cache fills bottom-up without recursion.
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0 || cache.count(d)) continue;
    RatPoly p(d + 1, Rational(0));
    p[0] = -1;
    p[d] = 1;  // x^d - 1
    for (long e = 1; e < d; ++e)
      if (d % e == 0) p = rp_divide_exact(std::move(p), cache.at(e));
    cache.emplace(d, std::move(p));
  }
  return cache.at(n);
}

// Rows k = 0 .. max(2*phi-2, n-1): coordinates of x^k reduced mod Phi_n.
inline const std::vector<RatPoly>& power_rows(long n) {
  static std::map<long, std::vector<RatPoly>> cache;
  static std::mutex mtx;
  const RatPoly& phi_poly = cyclotomic_polynomial(n);
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  long deg = static_cast<long>(phi_poly.size()) - 1;  // = phi(n)
  long count = std::max(2 * deg - 1, n);              // rows 0 .. count-1
  std::vector<RatPoly> rows;
  rows.reserve(count);
  for (long k = 0; k < count; ++k) {
    RatPoly row(deg, Rational(0));
    if (k < deg) {
      row[k] = 1;
    } else {
      // x * rows[k-1], then knock out the degree-deg term with Phi_n.
      const RatPoly& prev = rows[k - 1];
      Rational carry = prev[deg - 1];
      for (long i = deg - 1; i > 0; --i) row[i] = prev[i - 1];
      row[0] = 0;
      if (carry != 0)
        for (long i = 0; i < deg; ++i) row[i] -= carry * phi_poly[i];
    }
    rows.push_back(std::move(row));
  }
  auto res = cache.emplace(n, std::move(rows));
  return res.first->second;
}

}  // namespace detail

// An exact element of Q(zeta_N). Immutable in spirit: all operations return
// new values.
class Cyclotomic {
 public:
  // Zero, represented in Q(zeta_1) = Q.
  Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}

  // Rational values live at order 1.
  Cyclotomic(const Rational& r) : order_(1), coeffs_(1, r) {}
  Cyclotomic(long v) : order_(1), coeffs_(1, Rational(v)) {}

  // zeta_n^k.
  static Cyclotomic root_of_unity(long n, long k = 1) {
    if (n <= 0) throw std::invalid_argument("root_of_unity: order must be positive");
    k %= n;
    if (k < 0) k += n;
    const auto& rows = detail::power_rows(n);
    Cyclotomic z;
    z.order_ = n;
    z.coeffs_ = rows[k];
    return z;
  }

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
  }
  bool is_one() const { return is_rational() && coeffs_[0] == 1; }

  // The power basis starts with 1, so a value is rational exactly when every
  // higher coordinate vanishes.
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  Rational as_rational() const {
    if (!is_rational())
      throw std::domain_error("as_rational: value is not rational");
    return coeffs_[0];
  }
  bool is_integer() const {
    return is_rational() && coeffs_[0].get_den() == 1;
  }

  // The same value viewed in Q(zeta_m); requires order | m.
  Cyclotomic embedded(long m) const {
    if (m % order_ != 0)
      throw std::invalid_argument("embedded: target order not a multiple");
    if (m == order_) return *this;
    long d = m / order_;
    const auto& rows = detail::power_rows(m);
    Cyclotomic out;
    out.order_ = m;
    out.coeffs_.assign(detail::euler_phi(m), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const auto& row = rows[d * static_cast<long>(i)];
      for (std::size_t j = 0; j < out.coeffs_.size(); ++j)
        out.coeffs_[j] += coeffs_[i] * row[j];
    }
    return out;
  }

  // The same value viewed in the subfield Q(zeta_n); requires n | order and
  // the value to actually lie there.
  Cyclotomic reduced_to(long n) const {
    if (order_ % n != 0)
      throw std::invalid_argument("reduced_to: target order does not divide");
    if (n == order_) return *this;
    long d = order_ / n;
    long cols = detail::euler_phi(n);
    long rows_n = static_cast<long>(coeffs_.size());
    const auto& rows = detail::power_rows(order_);
    // Solve sum_j x_j * zeta^{d j} = value by Gaussian elimination on the
    // (rows_n) x (cols+1) augmented system.
    std::vector<std::vector<Rational>> aug(
        rows_n, std::vector<Rational>(cols + 1, Rational(0)));
    for (long j = 0; j < cols; ++j)
      for (long i = 0; i < rows_n; ++i) aug[i][j] = rows[d * j][i];
    for (long i = 0; i < rows_n; ++i) aug[i][cols] = coeffs_[i];

    long rank = 0;
    std::vector<long> pivot_col(rows_n, -1);
    for (long c = 0; c < cols && rank < rows_n; ++c) {
      long piv = -1;
      for (long r = rank; r < rows_n; ++r)
        if (aug[r][c] != 0) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(aug[rank], aug[piv]);
      Rational inv = 1 / aug[rank][c];
      for (long j = c; j <= cols; ++j) aug[rank][j] *= inv;
      for (long r = 0; r < rows_n; ++r) {
        if (r == rank || aug[r][c] == 0) continue;
        Rational f = aug[r][c];
        for (long j = c; j <= cols; ++j) aug[r][j] -= f * aug[rank][j];
      }
      pivot_col[rank] = c;
      ++rank;
    }
    for (long r = rank; r < rows_n; ++r)
      if (aug[r][cols] != 0)
        throw std::domain_error("reduced_to: value not in the subfield");
    Cyclotomic out;
    out.order_ = n;
    out.coeffs_.assign(cols, Rational(0));
    for (long r = 0; r < rank; ++r) out.coeffs_[pivot_col[r]] = aug[r][cols];
    return out;
  }

  // Complex conjugation zeta_N -> zeta_N^{N-1}; fixes rationals.
  Cyclotomic conj() const {
    if (order_ <= 2) return *this;
    const auto& rows = detail::power_rows(order_);
    Cyclotomic out;
    out.order_ = order_;
    out.coeffs_.assign(coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      long k = (static_cast<long>(i) * (order_ - 1)) % order_;
      const auto& row = rows[k];
      for (std::size_t j = 0; j < coeffs_.size(); ++j)
        out.coeffs_[j] += coeffs_[i] * row[j];
    }
    return out;
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = to_common_order(a, b);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
      x.coeffs_[i] += y.coeffs_[i];
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    return a + (-b);
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = to_common_order(a, b);
    long deg = static_cast<long>(x.coeffs_.size());
    std::vector<Rational> conv(2 * deg - 1, Rational(0));
    for (long i = 0; i < deg; ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (long j = 0; j < deg; ++j) {
        if (y.coeffs_[j] == 0) continue;
        conv[i + j] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    const auto& rows = detail::power_rows(x.order_);
    Cyclotomic out;
    out.order_ = x.order_;
    out.coeffs_.assign(deg, Rational(0));
    for (long k = 0; k < 2 * deg - 1; ++k) {
      if (conv[k] == 0) continue;
      const auto& row = rows[k];
      for (long j = 0; j < deg; ++j) out.coeffs_[j] += conv[k] * row[j];
    }
    return out;
  }

  // Multiplicative inverse, by solving v * x = 1 in the power basis.
  Cyclotomic inverse() const {
    if (is_zero()) throw std::domain_error("inverse: division by zero");
    if (is_rational()) return Cyclotomic(Rational(1 / coeffs_[0]));
    long deg = static_cast<long>(coeffs_.size());
    // Columns of A are the coordinates of value * zeta^j.
    std::vector<std::vector<Rational>> aug(
        deg, std::vector<Rational>(deg + 1, Rational(0)));
    Cyclotomic zj(1);
    zj.order_ = order_;
    zj.coeffs_.assign(deg, Rational(0));
    for (long j = 0; j < deg; ++j) {
      std::fill(zj.coeffs_.begin(), zj.coeffs_.end(), Rational(0));
      zj.coeffs_[j] = 1;
      Cyclotomic col = (*this) * zj;
      for (long i = 0; i < deg; ++i) aug[i][j] = col.coeffs_[i];
    }
    aug[0][deg] = 1;
    for (long c = 0; c < deg; ++c) {
      long piv = -1;
      for (long r = c; r < deg; ++r)
        if (aug[r][c] != 0) { piv = r; break; }
      if (piv < 0) throw std::logic_error("inverse: singular multiplication map");
      std::swap(aug[c], aug[piv]);
      Rational inv = 1 / aug[c][c];
      for (long j = c; j <= deg; ++j) aug[c][j] *= inv;
      for (long r = 0; r < deg; ++r) {
        if (r == c || aug[r][c] == 0) continue;
        Rational f = aug[r][c];
        for (long j = c; j <= deg; ++j) aug[r][j] -= f * aug[c][j];
      }
    }
    Cyclotomic out;
    out.order_ = order_;
    out.coeffs_.assign(deg, Rational(0));
    for (long r = 0; r < deg; ++r) out.coeffs_[r] = aug[r][deg];
    return out;
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    return a * b.inverse();
  }

  Cyclotomic pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Cyclotomic result(1), base = *this;
    while (k > 0) {
      if (k & 1) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    auto [x, y] = to_common_order(a, b);
    return x.coeffs_ == y.coeffs_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) {
    return !(a == b);
  }

  // A deterministic total order (not compatible with arithmetic), used for
  // canonical sorting of character-table rows and JSON output.
  static bool value_less(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = to_common_order(a, b);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      int c = cmp(x.coeffs_[i], y.coeffs_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  std::string to_string() const {
    if (is_rational()) return rational_to_string(coeffs_[0]);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0) {
        os << rational_to_string(coeffs_[0]);
        continue;
      }
      if (coeffs_[i] != 1) os << "(" << rational_to_string(coeffs_[i]) << ")*";
      os << "z" << order_;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

 private:
  static std::pair<Cyclotomic, Cyclotomic> to_common_order(const Cyclotomic& a,
                                                           const Cyclotomic& b) {
    if (a.order_ == b.order_) return {a, b};
    long l = std::lcm(a.order_, b.order_);
    return {a.embedded(l), b.embedded(l)};
  }

  long order_;
  std::vector<Rational> coeffs_;
};

inline Cyclotomic conj(const Cyclotomic& v) { return v.conj(); }

}  // namespace charsheaf
