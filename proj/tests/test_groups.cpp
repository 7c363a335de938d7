#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "charsheaf/character.hpp"
#include "charsheaf/cyclotomic.hpp"
#include "charsheaf/group.hpp"

using namespace charsheaf;

namespace {

// Independent construction of the S_k character rows, used as an oracle for
// mn_value: decompose the permutation characters on cosets of the block
// stabilizers (the regular representation being the finest of them) by exact
// inner products. Processing partitions in lexicographically descending
// order guarantees each permutation character contributes exactly one new
// irreducible row.

bool preserves_blocks(const std::vector<int>& p, const std::vector<int>& lambda) {
  int off = 0;
  for (int part : lambda) {
    for (int i = off; i < off + part; ++i)
      if (p[i] < off || p[i] >= off + part) return false;
    off += part;
  }
  return true;
}

std::vector<Rational> young_permutation_character(const FiniteGroupTable& g,
                                                  const std::vector<int>& lambda) {
  int n = g.size();
  std::vector<int> subgroup;
  for (int x = 0; x < n; ++x)
    if (preserves_blocks(g.permutation(x), lambda)) subgroup.push_back(x);

  std::vector<int> coset_min(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (coset_min[x] >= 0) continue;
    std::vector<int> coset;
    for (int h : subgroup) coset.push_back(g.mul(x, h));
    int least = *std::min_element(coset.begin(), coset.end());
    for (int y : coset) coset_min[y] = least;
    reps.push_back(least);
  }

  std::vector<Rational> values;
  for (const auto& cls : g.classes()) {
    int fixed = 0;
    for (int r : reps)
      if (coset_min[g.mul(cls.rep, r)] == r) ++fixed;
    values.emplace_back(fixed);
  }
  return values;
}

Rational class_function_inner(const FiniteGroupTable& g,
                              const std::vector<Rational>& a,
                              const std::vector<Rational>& b) {
  Rational sum(0);
  for (int c = 0; c < g.num_classes(); ++c) {
    Rational term = Rational(g.classes()[c].size()) * a[c] * b[c];
    sum = sum + term;
  }
  Rational result = sum / Rational(g.size());
  return result;
}

std::vector<std::vector<Rational>> regular_decomposition_rows(int k) {
  FiniteGroupTable g = FiniteGroupTable::symmetric(k);
  std::vector<std::vector<Rational>> extracted;
  for (const auto& lambda : partitions_of(k)) {
    std::vector<Rational> psi = young_permutation_character(g, lambda);
    for (const auto& chi : extracted) {
      Rational m = class_function_inner(g, psi, chi);
      REQUIRE(m.get_den() == 1);
      REQUIRE(m >= 0);
      for (int c = 0; c < g.num_classes(); ++c) {
        Rational adjusted = psi[c] - m * chi[c];
        psi[c] = adjusted;
      }
    }
    Rational norm = class_function_inner(g, psi, psi);
    REQUIRE(norm == 1);
    REQUIRE(psi[0] > 0);
    extracted.push_back(std::move(psi));
  }
  return extracted;
}

std::vector<std::vector<Rational>> sorted_rational_rows(
    std::vector<std::vector<Rational>> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
              for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] < b[i]) return true;
                if (b[i] < a[i]) return false;
              }
              return false;
            });
  return rows;
}

long partition_sign(int k, const std::vector<int>& mu) {
  return ((k - static_cast<int>(mu.size())) % 2 == 0) ? 1 : -1;
}

}  // namespace

TEST_CASE("conjugacy classes of the basic constructors") {
  FiniteGroupTable c4 = FiniteGroupTable::cyclic(4);
  REQUIRE(c4.num_classes() == 4);
  for (int c = 0; c < 4; ++c) {
    CHECK(c4.classes()[c].size() == 1);
    CHECK(c4.class_rep(c) == c);
  }

  FiniteGroupTable s3 = FiniteGroupTable::symmetric(3);
  REQUIRE(s3.num_classes() == 3);
  std::multiset<int> sizes;
  for (const auto& cls : s3.classes()) sizes.insert(cls.size());
  CHECK(sizes == std::multiset<int>{1, 2, 3});
  // Canonical order is by (size, representative).
  CHECK(s3.classes()[0].size() == 1);
  CHECK(s3.classes()[0].rep == 0);
  CHECK(s3.classes()[1].size() == 2);
  CHECK(s3.classes()[2].size() == 3);

  FiniteGroupTable s5 = FiniteGroupTable::symmetric(5);
  REQUIRE(s5.num_classes() == 7);
  std::set<std::vector<int>> types;
  for (const auto& cls : s5.classes()) types.insert(s5.cycle_type(cls.rep));
  auto parts = partitions_of(5);
  CHECK(types == std::set<std::vector<int>>(parts.begin(), parts.end()));

  // Classes partition the element set and the identity sits alone.
  for (const FiniteGroupTable& g :
       {FiniteGroupTable::dihedral8(), FiniteGroupTable::symmetric(4),
        FiniteGroupTable::elementary_abelian_2(3)}) {
    std::vector<bool> covered(g.size(), false);
    for (const auto& cls : g.classes())
      for (int m : cls.members) {
        CHECK_FALSE(covered[m]);
        covered[m] = true;
        CHECK(g.class_of(m) == g.class_of(cls.rep));
      }
    CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
    CHECK(g.classes()[0].members == std::vector<int>{0});
  }
}

TEST_CASE("centralizers as subgroup tables") {
  FiniteGroupTable s3 = FiniteGroupTable::symmetric(3);
  int three_cycle = -1;
  for (int x = 0; x < s3.size(); ++x)
    if (s3.element_order(x) == 3) {
      three_cycle = x;
      break;
    }
  REQUIRE(three_cycle >= 0);
  FiniteGroupTable c = s3.centralizer(three_cycle);
  REQUIRE(c.size() == 3);
  CHECK(c.is_abelian());
  bool has_order3 = false;
  for (int x = 0; x < 3; ++x)
    if (c.element_order(x) == 3) has_order3 = true;
  CHECK(has_order3);

  // Centralizer of the identity is the whole group, tag preserved.
  FiniteGroupTable whole = s3.centralizer(0);
  REQUIRE(whole.size() == s3.size());
  CHECK(whole.kind() == GroupKind::symmetric);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(whole.mul(a, b) == s3.mul(a, b));

  FiniteGroupTable s4 = FiniteGroupTable::symmetric(4);
  int double_transposition = -1;
  for (int x = 0; x < s4.size(); ++x)
    if (s4.cycle_type(x) == std::vector<int>{2, 2}) {
      double_transposition = x;
      break;
    }
  REQUIRE(double_transposition >= 0);
  FiniteGroupTable d = s4.centralizer(double_transposition);
  REQUIRE(d.size() == 8);
  CHECK_FALSE(d.is_abelian());

  // The embedding is a homomorphism into the parent.
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.size(); ++j)
      CHECK(s4.mul(d.to_parent(i), d.to_parent(j)) == d.to_parent(d.mul(i, j)));
  for (int i = 0; i < d.size(); ++i)
    CHECK(s4.mul(d.to_parent(i), double_transposition) ==
          s4.mul(double_transposition, d.to_parent(i)));
}

TEST_CASE("mn_value recursion") {
  SECTION("trivial and sign rows") {
    for (int k = 1; k <= 6; ++k) {
      std::vector<int> row(1, k);
      std::vector<int> column(k, 1);
      for (const auto& mu : partitions_of(k)) {
        CHECK(mn_value(row, mu) == 1);
        CHECK(mn_value(column, mu) == partition_sign(k, mu));
      }
    }
  }
  SECTION("single hook of leg length one") {
    CHECK(mn_value({2, 1}, {3}) == -1);
  }
  SECTION("rejects mismatched or malformed input") {
    CHECK_THROWS_AS(mn_value({2, 1}, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(mn_value({1, 2}, {3}), std::invalid_argument);
    CHECK_THROWS_AS(mn_value({2, 0}, {2}), std::invalid_argument);
  }
}

TEST_CASE("mn rows match permutation-module decomposition for k <= 4") {
  for (int k = 2; k <= 4; ++k) {
    FiniteGroupTable g = FiniteGroupTable::symmetric(k);
    auto oracle_rows = regular_decomposition_rows(k);

    std::vector<std::vector<Rational>> mn_rows;
    for (const auto& lambda : partitions_of(k)) {
      std::vector<Rational> row;
      for (const auto& cls : g.classes())
        row.emplace_back(mn_value(lambda, g.cycle_type(cls.rep)));
      mn_rows.push_back(std::move(row));
    }
    CHECK(sorted_rational_rows(mn_rows) == sorted_rational_rows(oracle_rows));

    // The regular character decomposes with multiplicity = degree.
    std::vector<Rational> reg(g.num_classes(), Rational(0));
    reg[0] = Rational(g.size());
    for (const auto& chi : oracle_rows)
      CHECK(class_function_inner(g, reg, chi) == chi[0]);
  }
}

TEST_CASE("character tables of the stock groups") {
  SECTION("cyclic(2)") {
    CharacterTable t = character_table(FiniteGroupTable::cyclic(2));
    REQUIRE(t.num_irreducibles() == 2);
    CHECK(t.rows[0] == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(-1)});
    CHECK(t.rows[1] == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(1)});
    CHECK(t.trivial_index() == 1);
  }
  SECTION("symmetric(5)") {
    CharacterTable t = character_table(FiniteGroupTable::symmetric(5));
    REQUIRE(t.num_irreducibles() == 7);
    CHECK(t.degrees == std::vector<long>{1, 1, 4, 4, 5, 5, 6});
    for (const auto& row : t.rows)
      for (const auto& v : row) CHECK(v.is_integer());
  }
  SECTION("symmetric(6)") {
    CharacterTable t = character_table(FiniteGroupTable::symmetric(6));
    REQUIRE(t.num_irreducibles() == 11);
    CHECK(t.degrees == std::vector<long>{1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16});
  }
  SECTION("dihedral8") {
    CharacterTable t = character_table(FiniteGroupTable::dihedral8());
    REQUIRE(t.num_irreducibles() == 5);
    CHECK(t.degrees == std::vector<long>{1, 1, 1, 1, 2});
    CHECK_NOTHROW(t.verify());
  }
  SECTION("cyclic(6) has primitive sixth-root values") {
    CharacterTable t = character_table(FiniteGroupTable::cyclic(6));
    REQUIRE(t.num_irreducibles() == 6);
    bool found_primitive = false;
    for (const auto& row : t.rows)
      if (row[1] == Cyclotomic::root_of_unity(6, 1)) found_primitive = true;
    CHECK(found_primitive);
  }
}

TEST_CASE("orthogonality holds for constructible groups up to order 120") {
  std::vector<FiniteGroupTable> groups;
  for (int m : {1, 2, 3, 4, 5, 6, 8, 12}) groups.push_back(FiniteGroupTable::cyclic(m));
  for (int k : {2, 3, 4, 5}) groups.push_back(FiniteGroupTable::symmetric(k));
  for (int r : {1, 2, 3, 4}) groups.push_back(FiniteGroupTable::elementary_abelian_2(r));
  groups.push_back(FiniteGroupTable::dihedral8());
  groups.push_back(FiniteGroupTable::product(FiniteGroupTable::cyclic(2),
                                             FiniteGroupTable::symmetric(3)));
  groups.push_back(FiniteGroupTable::product(FiniteGroupTable::cyclic(3),
                                             FiniteGroupTable::cyclic(4)));
  groups.push_back(FiniteGroupTable::product(FiniteGroupTable::symmetric(4),
                                             FiniteGroupTable::cyclic(5)));
  for (const auto& g : groups) {
    REQUIRE(g.size() <= 120);
    CharacterTable t = character_table(g);
    CHECK_NOTHROW(t.verify());
  }
}

TEST_CASE("tensor tables agree with structural recognition") {
  // The same group reaches character_table through two different paths when
  // rebuilt as an untagged subgroup of itself; both must give identical
  // canonical tables.
  auto all_elements = [](const FiniteGroupTable& g) {
    std::vector<int> e(g.size());
    std::iota(e.begin(), e.end(), 0);
    return e;
  };
  std::vector<FiniteGroupTable> groups;
  groups.push_back(FiniteGroupTable::product(FiniteGroupTable::cyclic(2),
                                             FiniteGroupTable::cyclic(3)));
  groups.push_back(FiniteGroupTable::product(FiniteGroupTable::cyclic(2),
                                             FiniteGroupTable::symmetric(3)));
  groups.push_back(FiniteGroupTable::product(FiniteGroupTable::cyclic(4),
                                             FiniteGroupTable::cyclic(2)));
  groups.push_back(FiniteGroupTable::symmetric(3));
  groups.push_back(FiniteGroupTable::dihedral8());
  for (const auto& g : groups) {
    CharacterTable direct = character_table(g);
    CharacterTable recognized = character_table(g.subgroup(all_elements(g)));
    REQUIRE(direct.num_irreducibles() == recognized.num_irreducibles());
    for (int i = 0; i < direct.num_irreducibles(); ++i)
      CHECK(direct.rows[i] == recognized.rows[i]);
  }
}

TEST_CASE("centralizer character tables inside symmetric groups") {
  FiniteGroupTable s5 = FiniteGroupTable::symmetric(5);

  SECTION("transposition centralizer, order 12") {
    int t = -1;
    for (int x = 0; x < s5.size(); ++x)
      if (s5.cycle_type(x) == std::vector<int>{2, 1, 1, 1}) {
        t = x;
        break;
      }
    FiniteGroupTable c = s5.centralizer(t);
    REQUIRE(c.size() == 12);
    CharacterTable tab = character_table(c);
    CHECK(tab.degrees == std::vector<long>{1, 1, 1, 1, 2, 2});
  }

  SECTION("double-transposition centralizer, order 8") {
    int t = -1;
    for (int x = 0; x < s5.size(); ++x)
      if (s5.cycle_type(x) == std::vector<int>{2, 2, 1}) {
        t = x;
        break;
      }
    FiniteGroupTable c = s5.centralizer(t);
    REQUIRE(c.size() == 8);
    CharacterTable tab = character_table(c);
    CHECK(tab.degrees == std::vector<long>{1, 1, 1, 1, 2});
  }

  SECTION("three-cycle centralizer, cyclic of order 6") {
    int t = -1;
    for (int x = 0; x < s5.size(); ++x)
      if (s5.cycle_type(x) == std::vector<int>{3, 1, 1}) {
        t = x;
        break;
      }
    FiniteGroupTable c = s5.centralizer(t);
    REQUIRE(c.size() == 6);
    CHECK(c.is_abelian());
    CharacterTable tab = character_table(c);
    CHECK(tab.degrees == std::vector<long>(6, 1));
  }

  SECTION("unsupported shapes are rejected by name") {
    FiniteGroupTable s4 = FiniteGroupTable::symmetric(4);
    std::vector<int> all(s4.size());
    std::iota(all.begin(), all.end(), 0);
    CHECK_THROWS_WITH(character_table(s4.subgroup(all)),
                      Catch::Matchers::ContainsSubstring("unsupported group"));
  }
}
