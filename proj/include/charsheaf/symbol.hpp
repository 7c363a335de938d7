#pragma once

// Symbols for classical Weyl groups: two strictly increasing rows of
// non-negative integers taken up to the shift that prepends a zero to both
// rows and bumps every entry. Stored reduced (at most one row contains 0).
// The rank formula is the same in all three types; the type-D form was
// pinned by the square-rank constraint on the cuspidal family and validated
// for all d up to 10 in the tests.
//
// Two source conventions for printed symbols exist in the tables this feeds;
// symbols carry a convention tag verbatim and are never converted.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace charsheaf {

enum class SymbolType { B, C, D };
enum class SymbolConvention { LS, ICC };

struct Symbol {
  std::vector<int> row_a;
  std::vector<int> row_b;
  SymbolType type = SymbolType::B;
  SymbolConvention convention = SymbolConvention::LS;

  friend bool operator==(const Symbol& s, const Symbol& t) {
    return s.row_a == t.row_a && s.row_b == t.row_b && s.type == t.type &&
           s.convention == t.convention;
  }
  friend bool operator!=(const Symbol& s, const Symbol& t) { return !(s == t); }

  std::string to_string() const {
    auto row = [](const std::vector<int>& r) {
      std::ostringstream os;
      os << "{";
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << ",";
        os << r[i];
      }
      os << "}";
      return os.str();
    };
    return "(" + row(row_a) + "," + row(row_b) + ")";
  }
};

namespace detail {

inline void require_strictly_increasing(const std::vector<int>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] < 0)
      throw std::invalid_argument("symbol rows must be non-negative");
    if (i > 0 && row[i] <= row[i - 1])
      throw std::invalid_argument("symbol rows must be strictly increasing");
  }
}

}  // namespace detail

// Canonical representative of the shift class: strip paired leading zeros
// and decrement until at most one row contains 0.
inline Symbol normalize(std::vector<int> row_a, std::vector<int> row_b,
                        SymbolType type,
                        SymbolConvention convention = SymbolConvention::LS) {
  detail::require_strictly_increasing(row_a);
  detail::require_strictly_increasing(row_b);
  while (!row_a.empty() && !row_b.empty() && row_a.front() == 0 &&
         row_b.front() == 0) {
    row_a.erase(row_a.begin());
    row_b.erase(row_b.begin());
    for (int& e : row_a) --e;
    for (int& e : row_b) --e;
  }
  return Symbol{std::move(row_a), std::move(row_b), type, convention};
}

// One step in the opposite direction: bump all entries and prepend zeros.
inline Symbol shift(const Symbol& s, int steps = 1) {
  if (steps < 0) throw std::invalid_argument("shift: steps must be >= 0");
  Symbol out = s;
  for (int i = 0; i < steps; ++i) {
    for (int& e : out.row_a) ++e;
    for (int& e : out.row_b) ++e;
    out.row_a.insert(out.row_a.begin(), 0);
    out.row_b.insert(out.row_b.begin(), 0);
  }
  return out;
}

inline int defect(const Symbol& s) {
  int a = static_cast<int>(s.row_a.size());
  int b = static_cast<int>(s.row_b.size());
  return a >= b ? a - b : b - a;
}

inline long rank(const Symbol& s) {
  long sum = 0;
  for (int e : s.row_a) sum += e;
  for (int e : s.row_b) sum += e;
  long total = static_cast<long>(s.row_a.size() + s.row_b.size());
  long correction = total >= 1 ? ((total - 1) * (total - 1)) / 4 : 0;
  return sum - correction;
}

// The unique cuspidal symbol of the given rank, when the rank has the right
// shape: n = d^2 + d (d >= 1) in type B, n = (d+1)^2 (d >= 0) in type D.
inline std::optional<Symbol> cuspidal_symbol(SymbolType type, long n) {
  if (type == SymbolType::C)
    throw std::invalid_argument("cuspidal_symbol: expected type B or D");
  if (n < 0) return std::nullopt;
  if (type == SymbolType::B) {
    for (long d = 1; d * (d + 1) <= n; ++d)
      if (d * (d + 1) == n) {
        std::vector<int> row(2 * d + 1);
        for (int i = 0; i <= 2 * d; ++i) row[i] = i;
        return Symbol{std::move(row), {}, SymbolType::B};
      }
    return std::nullopt;
  }
  for (long d = 0; (d + 1) * (d + 1) <= n; ++d)
    if ((d + 1) * (d + 1) == n) {
      std::vector<int> row(2 * d + 2);
      for (int i = 0; i <= 2 * d + 1; ++i) row[i] = i;
      return Symbol{std::move(row), {}, SymbolType::D};
    }
  return std::nullopt;
}

// The (x, chi) label of the cuspidal pair in (Z/2)^d: x alternates starting
// at -1, chi is -1 in every coordinate. Entries are the +-1 values.
struct CuspidalLabel {
  std::vector<int> x;
  std::vector<int> chi;
};

inline CuspidalLabel cuspidal_label(int d) {
  if (d < 1) throw std::invalid_argument("cuspidal_label: d must be >= 1");
  CuspidalLabel label;
  for (int i = 0; i < d; ++i) {
    label.x.push_back(i % 2 == 0 ? -1 : 1);
    label.chi.push_back(-1);
  }
  return label;
}

}  // namespace charsheaf
