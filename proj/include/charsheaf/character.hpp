#pragma once

// Exact character tables over cyclotomic numbers for the group kinds in
// group.hpp. Symmetric groups use the Murnaghan-Nakayama recursion, abelian
// groups enumerate homomorphisms into roots of unity, D8 and a few
// centralizer shapes (S3, D8, Z/2 x S3) are recognized structurally, and
// products take tensor products of factor tables.
//
// Irreducible rows are kept in a canonical order: by degree, then
// lexicographically by value (Cyclotomic::value_less) across the canonical
// class order. Every constructed table passes both orthogonality relations
// exactly before it is returned.

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "charsheaf/cyclotomic.hpp"
#include "charsheaf/group.hpp"

namespace charsheaf {

// All partitions of k, each a descending vector of positive parts.
inline std::vector<std::vector<int>> partitions_of(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

// Symmetric group character value chi^lambda(mu) by the Murnaghan-Nakayama
// rule, working on first-column hook lengths: removing a border strip of
// size m turns a hook length b into b - m, with sign (-1)^(number of hook
// lengths strictly between them).
inline long mn_value(const std::vector<int>& lambda,
                     const std::vector<int>& mu) {
  auto check = [](const std::vector<int>& p) {
    long total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 1 || (i > 0 && p[i] > p[i - 1]))
        throw std::invalid_argument("mn_value: not a partition");
      total += p[i];
    }
    return total;
  };
  if (check(lambda) != check(mu))
    throw std::invalid_argument("mn_value: partitions of different sizes");

  std::vector<int> beta(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    beta[i] = lambda[i] + static_cast<int>(lambda.size() - 1 - i);
  std::sort(beta.begin(), beta.end());

  auto rec = [&](auto&& self, std::vector<int>& b, std::size_t pos) -> long {
    if (pos == mu.size()) return 1;
    int m = mu[pos];
    long total = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      int target = b[i] - m;
      if (target < 0) continue;
      if (std::binary_search(b.begin(), b.end(), target)) continue;
      int height = 0;
      for (int x : b)
        if (x > target && x < b[i]) ++height;
      std::vector<int> next = b;
      next[i] = target;
      std::sort(next.begin(), next.end());
      long sub = self(self, next, pos + 1);
      total += (height % 2 == 0) ? sub : -sub;
    }
    return total;
  };
  return rec(rec, beta, 0);
}

struct CharacterTable {
  std::shared_ptr<const FiniteGroupTable> group;
  std::vector<std::vector<Cyclotomic>> rows;  // irreducible x class
  std::vector<long> degrees;

  int num_irreducibles() const { return static_cast<int>(rows.size()); }
  int num_classes() const { return group->num_classes(); }

  const Cyclotomic& value(int irr, int cls) const { return rows[irr][cls]; }
  const Cyclotomic& value_at(int irr, int element) const {
    return rows[irr][group->class_of(element)];
  }

  int trivial_index() const {
    for (int i = 0; i < num_irreducibles(); ++i) {
      bool all_one = true;
      for (const auto& v : rows[i])
        if (!v.is_one()) {
          all_one = false;
          break;
        }
      if (all_one) return i;
    }
    throw std::logic_error("character table: no trivial row");
  }

  // Both orthogonality relations and the degree sum, all exact.
  void verify() const {
    const auto& classes = group->classes();
    int nc = num_classes();
    int ni = num_irreducibles();
    if (ni != nc)
      throw std::logic_error("character table: row count != class count");
    Rational order(group->size());

    long deg_sq = 0;
    for (int i = 0; i < ni; ++i) {
      if (!rows[i][0].is_integer())
        throw std::logic_error("character table: degree not an integer");
      if (degrees[i] <= 0 || Cyclotomic(degrees[i]) != rows[i][0])
        throw std::logic_error("character table: degree mismatch");
      deg_sq += degrees[i] * degrees[i];
    }
    if (deg_sq != group->size())
      throw std::logic_error("character table: degree squares do not sum to |G|");

    for (int i = 0; i < ni; ++i)
      for (int j = i; j < ni; ++j) {
        Cyclotomic sum(0);
        for (int c = 0; c < nc; ++c)
          sum = sum + Cyclotomic(classes[c].size()) * rows[i][c] * conj(rows[j][c]);
        Cyclotomic expect(i == j ? order : Rational(0));
        if (sum != expect)
          throw std::logic_error("character table: row orthogonality fails");
      }

    for (int c = 0; c < nc; ++c)
      for (int d = c; d < nc; ++d) {
        Cyclotomic sum(0);
        for (int i = 0; i < ni; ++i)
          sum = sum + rows[i][c] * conj(rows[i][d]);
        Cyclotomic expect(c == d ? order / Rational(classes[c].size())
                                 : Rational(0));
        if (sum != expect)
          throw std::logic_error("character table: column orthogonality fails");
      }
  }
};

namespace detail {

inline void sort_rows_canonically(CharacterTable& t) {
  std::sort(t.rows.begin(), t.rows.end(),
            [](const std::vector<Cyclotomic>& a,
               const std::vector<Cyclotomic>& b) {
              if (a[0] != b[0]) return Cyclotomic::value_less(a[0], b[0]);
              for (std::size_t c = 1; c < a.size(); ++c)
                if (a[c] != b[c]) return Cyclotomic::value_less(a[c], b[c]);
              return false;
            });
  t.degrees.clear();
  for (const auto& row : t.rows)
    t.degrees.push_back(row[0].as_rational().get_num().get_si());
}

// Homomorphisms G -> roots of unity for an abelian table: pick generators
// greedily by maximal order, try every exponent assignment, keep the
// consistent ones. Exactly |G| survive.
inline std::vector<std::vector<Cyclotomic>> abelian_rows(
    const FiniteGroupTable& g) {
  int n = g.size();
  long exponent = 1;
  std::vector<int> orders(n);
  for (int x = 0; x < n; ++x) {
    orders[x] = g.element_order(x);
    exponent = std::lcm<long>(exponent, orders[x]);
  }

  std::vector<int> gens;
  std::vector<int> span = {0};
  while (static_cast<int>(span.size()) < n) {
    int best = -1;
    for (int x = 0; x < n; ++x) {
      if (std::binary_search(span.begin(), span.end(), x)) continue;
      if (best < 0 || orders[x] > orders[best]) best = x;
    }
    gens.push_back(best);
    span = g.generated_subgroup(gens);
  }

  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<long> assignment(gens.size(), 0);
  auto try_leaf = [&]() {
    std::vector<long> exps(n, -1);
    exps[0] = 0;
    std::vector<int> frontier = {0};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier)
        for (std::size_t i = 0; i < gens.size(); ++i) {
          int y = g.mul(x, gens[i]);
          long val = (exps[x] + assignment[i]) % exponent;
          if (exps[y] < 0) {
            exps[y] = val;
            next.push_back(y);
          } else if (exps[y] != val) {
            return;  // inconsistent assignment
          }
        }
      frontier = std::move(next);
    }
    std::vector<Cyclotomic> row;
    row.reserve(g.num_classes());
    for (const auto& cls : g.classes())
      row.push_back(Cyclotomic::root_of_unity(exponent, exps[cls.rep]));
    rows.push_back(std::move(row));
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) {
      try_leaf();
      return;
    }
    long step = exponent / orders[gens[i]];
    for (long t = 0; t < orders[gens[i]]; ++t) {
      assignment[i] = t * step;
      self(self, i + 1);
    }
  };
  rec(rec, 0);

  if (static_cast<int>(rows.size()) != n)
    throw std::logic_error("abelian character table: wrong row count");
  return rows;
}

// The three rows of a nonabelian order-6 table, keyed by element order of
// the class representatives (1, 2, 3 give the identity, reflection and
// rotation classes).
inline std::vector<std::vector<Cyclotomic>> s3_shape_rows(
    const FiniteGroupTable& g) {
  std::vector<Cyclotomic> triv, sign, two;
  for (const auto& cls : g.classes()) {
    int ord = g.element_order(cls.rep);
    triv.push_back(Cyclotomic(1));
    switch (ord) {
      case 1:
        sign.push_back(Cyclotomic(1));
        two.push_back(Cyclotomic(2));
        break;
      case 2:
        sign.push_back(Cyclotomic(-1));
        two.push_back(Cyclotomic(0));
        break;
      case 3:
        sign.push_back(Cyclotomic(1));
        two.push_back(Cyclotomic(-1));
        break;
      default:
        throw std::invalid_argument("unsupported group structure for character table");
    }
  }
  return {triv, sign, two};
}

inline std::vector<std::vector<Cyclotomic>> d8_shape_rows(
    const FiniteGroupTable& g) {
  // Classes in canonical order: identity, central involution, then three
  // size-2 classes of which exactly one consists of order-4 elements.
  std::vector<int> sizes;
  for (const auto& cls : g.classes()) sizes.push_back(cls.size());
  if (sizes != std::vector<int>{1, 1, 2, 2, 2})
    throw std::invalid_argument("unsupported group structure for character table");
  int rot = -1, refl1 = -1, refl2 = -1;
  for (int c = 2; c < 5; ++c) {
    if (g.element_order(g.class_rep(c)) == 4)
      rot = c;
    else if (refl1 < 0)
      refl1 = c;
    else
      refl2 = c;
  }
  if (rot < 0 || refl2 < 0)
    throw std::invalid_argument("unsupported group structure for character table");

  std::vector<std::vector<Cyclotomic>> rows(
      5, std::vector<Cyclotomic>(5, Cyclotomic(1)));
  // Four linear rows: z always maps to 1, the rotation and first reflection
  // signs run over all combinations.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto& row = rows[2 * a + b];
      row[rot] = Cyclotomic(a ? -1 : 1);
      row[refl1] = Cyclotomic(b ? -1 : 1);
      row[refl2] = Cyclotomic((a ^ b) ? -1 : 1);
    }
  // The two-dimensional row: 2 on the identity, -2 on the central
  // involution, 0 elsewhere.
  std::vector<Cyclotomic> two(5, Cyclotomic(0));
  two[0] = Cyclotomic(2);
  for (int c = 1; c < 5; ++c)
    if (g.classes()[c].size() == 1) two[c] = Cyclotomic(-2);
  rows[4] = two;
  return rows;
}

// Nonabelian order 12 with 7 involutions: a central involution times an
// order-6 nonabelian complement. Rows are products of a sign on the central
// factor with a complement row.
inline std::vector<std::vector<Cyclotomic>> z2xs3_shape_rows(
    const FiniteGroupTable& g) {
  auto center = g.center();
  if (center.size() != 2)
    throw std::invalid_argument("unsupported group structure for character table");
  int z = center[0] == 0 ? center[1] : center[0];

  int c3 = -1, t = -1;
  for (int x = 1; x < g.size(); ++x) {
    int ord = g.element_order(x);
    if (ord == 3 && c3 < 0) c3 = x;
    if (ord == 2 && x != z && t < 0) t = x;
  }
  if (c3 < 0 || t < 0)
    throw std::invalid_argument("unsupported group structure for character table");
  auto h_elements = g.generated_subgroup({c3, t});
  if (h_elements.size() != 6)
    throw std::invalid_argument("unsupported group structure for character table");
  FiniteGroupTable h = g.subgroup(h_elements);
  auto h_rows = s3_shape_rows(h);

  std::vector<std::vector<Cyclotomic>> rows;
  for (int sgn = 0; sgn < 2; ++sgn)
    for (const auto& h_row : h_rows) {
      std::vector<Cyclotomic> row;
      for (const auto& cls : g.classes()) {
        int gx = cls.rep;
        int a = 0;
        int hx = gx;
        if (std::find(h_elements.begin(), h_elements.end(), gx) ==
            h_elements.end()) {
          a = 1;
          hx = g.mul(z, gx);
        }
        Cyclotomic v = h_row[h.class_of(h.from_parent(hx))];
        row.push_back((sgn && a) ? -v : v);
      }
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace detail

inline CharacterTable character_table(const FiniteGroupTable& g);

namespace detail {

inline std::vector<std::vector<Cyclotomic>> symmetric_rows(
    const FiniteGroupTable& g) {
  std::vector<std::vector<int>> class_types;
  for (const auto& cls : g.classes()) class_types.push_back(g.cycle_type(cls.rep));
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& lambda : partitions_of(g.param())) {
    std::vector<Cyclotomic> row;
    for (const auto& mu : class_types)
      row.push_back(Cyclotomic(mn_value(lambda, mu)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<std::vector<Cyclotomic>> product_rows(
    const FiniteGroupTable& g) {
  CharacterTable ta = character_table(g.left_factor());
  CharacterTable tb = character_table(g.right_factor());
  std::vector<std::pair<int, int>> class_parts;
  for (const auto& cls : g.classes()) {
    auto [a, b] = g.product_parts(cls.rep);
    class_parts.emplace_back(g.left_factor().class_of(a),
                             g.right_factor().class_of(b));
  }
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& ra : ta.rows)
    for (const auto& rb : tb.rows) {
      std::vector<Cyclotomic> row;
      for (auto [ca, cb] : class_parts) row.push_back(ra[ca] * rb[cb]);
      rows.push_back(std::move(row));
    }
  return rows;
}

inline int involution_count(const FiniteGroupTable& g) {
  int count = 0;
  for (int x = 1; x < g.size(); ++x)
    if (g.mul(x, x) == 0) ++count;
  return count;
}

}  // namespace detail

// Builds the character table of any supported group. Subgroup tables without
// a constructor tag are recognized by structure: abelian groups always work;
// the nonabelian shapes arising as centralizers in the supported symmetric
// groups (order 6, D8, Z/2 x S3) are matched by order and involution count.
inline CharacterTable character_table(const FiniteGroupTable& g) {
  CharacterTable t;
  t.group = std::make_shared<FiniteGroupTable>(g);

  switch (g.kind()) {
    case GroupKind::symmetric:
      t.rows = detail::symmetric_rows(g);
      break;
    case GroupKind::cyclic:
    case GroupKind::elementary_abelian_2:
      t.rows = detail::abelian_rows(g);
      break;
    case GroupKind::dihedral8:
      t.rows = detail::d8_shape_rows(g);
      break;
    case GroupKind::product:
      t.rows = detail::product_rows(g);
      break;
    case GroupKind::subgroup:
      if (g.is_abelian())
        t.rows = detail::abelian_rows(g);
      else if (g.size() == 6)
        t.rows = detail::s3_shape_rows(g);
      else if (g.size() == 8 && detail::involution_count(g) == 5)
        t.rows = detail::d8_shape_rows(g);
      else if (g.size() == 12 && detail::involution_count(g) == 7)
        t.rows = detail::z2xs3_shape_rows(g);
      else
        throw std::invalid_argument("unsupported group structure for character table");
      break;
  }

  detail::sort_rows_canonically(t);
  t.verify();
  return t;
}

}  // namespace charsheaf
