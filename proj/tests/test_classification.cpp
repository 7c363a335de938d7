#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "charsheaf/classify.hpp"

using namespace charsheaf;

namespace {

// Independent pair arithmetic, reimplemented here so the enumeration rules
// are checked against a second route rather than against themselves.
bool oracle_is_triangular(long n) {
  for (long d = 0; d * (d + 1) / 2 <= n; ++d)
    if (d * (d + 1) / 2 == n) return true;
  return false;
}

bool oracle_is_square(long n) {
  for (long r = 0; r * r <= n; ++r)
    if (r * r == n) return true;
  return false;
}

long oracle_index(long n, bool squares) {
  for (long k = 0;; ++k) {
    long v = squares ? k * k : k * (k + 1) / 2;
    if (v == n) return k;
    if (v > n) return -1;
  }
}

using PairList = std::vector<std::pair<long, long>>;

PairList oracle_pairs(long total, bool squares, bool ordered,
                      PairConstraint c) {
  PairList out;
  for (long a = 0; a <= total; ++a) {
    long b = total - a;
    bool a_ok = squares ? oracle_is_square(a) : oracle_is_triangular(a);
    bool b_ok = squares ? oracle_is_square(b) : oracle_is_triangular(b);
    if (!a_ok || !b_ok) continue;
    bool meets = true;
    switch (c) {
      case PairConstraint::none: break;
      case PairConstraint::same_parity: meets = a % 2 == b % 2; break;
      case PairConstraint::opposite_parity: meets = a % 2 != b % 2; break;
      case PairConstraint::both_even:
        meets = a % 2 == 0 && b % 2 == 0;
        break;
      case PairConstraint::even_then_odd:
        meets = a % 2 == 0 && b % 2 == 1;
        break;
    }
    if (!meets) continue;
    if (!ordered && c != PairConstraint::even_then_odd && a > b) continue;
    out.emplace_back(a, b);
  }
  return out;
}

long oracle_phi(long n) {
  long count = 0;
  for (long c = 1; c < n; ++c)
    if (std::gcd(c, n) == 1) ++count;
  return count;
}

// Expected datum counts per classical branch, recomputed from the counting
// rules independently of the enumeration code.
long oracle_c_ad(long n) {
  long total = 0;
  for (auto [a, b] : oracle_pairs(n, false, false,
                                  PairConstraint::same_parity))
    total += a == b ? 2 : 1;
  return total;
}

long oracle_c_sc(long n) {
  return static_cast<long>(
      oracle_pairs(n, false, true, PairConstraint::none).size());
}

long oracle_b_ad(long n) {
  long total = 0;
  for (auto [a, b] : oracle_pairs(2 * n + 1, true, false,
                                  PairConstraint::even_then_odd))
    total += a == 0 ? 1 : 2;
  return total;
}

long oracle_b_sc(long n) {
  long total = 0;
  for (auto [a, b] : oracle_pairs(2 * n + 1, true, false,
                                  PairConstraint::even_then_odd))
    total += a == 0 ? 2 : 1;
  for (auto [a, b] : oracle_pairs(2 * n + 1, false, false,
                                  PairConstraint::even_then_odd)) {
    long i1 = oracle_index(a, false);
    long i2 = oracle_index(b, false);
    long r, t;
    if (i1 % 2 != i2 % 2) {
      t = i1 % 2 == 0 ? i1 : i2;
      r = i1 % 2 == 0 ? i2 : i1;
      if (((r - t - 1) % 4 + 4) % 4 != 0) continue;
    } else {
      r = std::max(i1, i2);
      t = std::min(i1, i2);
      if (((r - t - 2) % 4 + 4) % 4 != 0) continue;
    }
    total += 2;
  }
  return total;
}

long oracle_d_ad(long n) {
  if (n % 4 != 0) return 0;
  long total = 0;
  for (auto [a, b] : oracle_pairs(2 * n, true, false,
                                  PairConstraint::both_even))
    total += a == 0 ? 1 : (a == b ? 4 : 2);
  return total;
}

long oracle_d_so(long n) {
  long total = 0;
  for (auto [a, b] : oracle_pairs(2 * n, true, true,
                                  PairConstraint::both_even))
    total += (a == 0 || b == 0) ? 1 : 2;
  return total;
}

long oracle_d_half_spin(long n) {
  long total = 0;
  if (n >= 6)
    for (auto [a, b] : oracle_pairs(2 * n, false, false,
                                    PairConstraint::both_even))
      total += a == b ? 4 : 2;
  if (n % 4 == 0)
    for (auto [a, b] : oracle_pairs(2 * n, true, false,
                                    PairConstraint::both_even))
      total += a == b ? 2 : 1;
  return total;
}

long oracle_d_sc(long n) {
  long total = 0;
  if (n % 2 == 0) {
    for (auto [a, b] : oracle_pairs(2 * n, true, true,
                                    PairConstraint::both_even))
      total += (a == 0 || b == 0) ? 2 : 1;
    if (n >= 6)
      total += 2 * static_cast<long>(
          oracle_pairs(2 * n, false, true, PairConstraint::both_even)
              .size());
  } else {
    total += 2 * static_cast<long>(
        oracle_pairs(2 * n, false, true, PairConstraint::both_even).size());
  }
  return total;
}

long oracle_bc_char2(long n) {
  for (long d = 1; d * (d + 1) <= n; ++d)
    if (d * (d + 1) == n) return 1;
  return 0;
}

long oracle_d_char2(long n) {
  for (long d = 2; d * d <= n; d += 2)
    if (d * d == n) return 1;
  return 0;
}

std::vector<CuspidalSheafDatum> enumerate(Series s, const char* iso, long n,
                                          long p) {
  return enumerate_cuspidal(make_group_spec(s, iso, n, p));
}

void require_labels_distinct(const std::vector<CuspidalSheafDatum>& data) {
  std::set<std::string> seen;
  for (const auto& d : data) {
    INFO("duplicate label: " << d.label);
    REQUIRE(seen.insert(d.label).second);
  }
}

std::string printed_eigenvalue(long order, long power) {
  if (order == 1) return "1";
  if (order == 2) return "-1";
  if (order == 3) return power == 1 ? "theta" : "theta^2";
  if (order == 4) return power == 1 ? "i" : "-i";
  if (order == 5) return power == 1 ? "zeta" : "zeta^" + std::to_string(power);
  if (order == 6) return power == 5 ? "-theta" : "-theta^2";
  return "?";
}

const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names = {
      "g2", "f4", "e8", "e6_ad", "e6_sc", "e7_ad", "e7_sc"};
  return names;
}

}  // namespace

TEST_CASE("pair decompositions") {
  SECTION("frozen triangular examples") {
    REQUIRE(triangular_pairs(4, PairConstraint::same_parity, false) ==
            PairList{{1, 3}});
    REQUIRE(triangular_pairs(0, PairConstraint::same_parity, false) ==
            PairList{{0, 0}});
    REQUIRE(triangular_pairs(6, PairConstraint::same_parity, false) ==
            PairList{{0, 6}, {3, 3}});
  }

  SECTION("frozen square examples") {
    REQUIRE(square_pairs(16, PairConstraint::both_even, false) ==
            PairList{{0, 16}});
    REQUIRE(square_pairs(2, PairConstraint::both_even, false).empty());
    REQUIRE(square_pairs(32, PairConstraint::both_even, false) ==
            PairList{{16, 16}});
  }

  SECTION("agreement with the brute-force oracle") {
    for (long total = 0; total <= 60; ++total) {
      for (PairConstraint c :
           {PairConstraint::none, PairConstraint::same_parity,
            PairConstraint::opposite_parity, PairConstraint::both_even,
            PairConstraint::even_then_odd}) {
        for (bool ordered : {false, true}) {
          INFO("total " << total << " constraint "
                        << static_cast<int>(c) << " ordered " << ordered);
          REQUIRE(triangular_pairs(total, c, ordered) ==
                  oracle_pairs(total, false, ordered, c));
          REQUIRE(square_pairs(total, c, ordered) ==
                  oracle_pairs(total, true, ordered, c));
        }
      }
    }
  }

  SECTION("negative totals are rejected") {
    REQUIRE_THROWS_AS(triangular_pairs(-1, PairConstraint::none, false),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(square_pairs(-3, PairConstraint::none, true),
                      std::invalid_argument);
  }
}

TEST_CASE("dual series data") {
  SECTION("series C shapes") {
    DualSeriesData d = dual_series_classical(DualCase::c_series, 2, 1);
    REQUIRE(d.a == 4);
    REQUIRE(d.b == 0);
    REQUIRE(d.centralizer == "Spin_8 x_{Z/2} Spin_1");
    REQUIRE(d.weyl_label == "W(D_4) x W(B_0)");
    // Equal indices land in the even branch with a vanishing first factor.
    for (long t = 0; t <= 5; ++t) {
      DualSeriesData eq = dual_series_classical(DualCase::c_series, t, t);
      REQUIRE(eq.a == 0);
      REQUIRE(eq.b == t * (t + 1) / 2);
    }
  }

  SECTION("series B square shapes") {
    DualSeriesData d = dual_series_classical(DualCase::b_squares, 3, 0);
    REQUIRE(d.a == 4);
    REQUIRE(d.b == 4);
    REQUIRE(d.centralizer == "Sp_4 x Sp_4");
    DualSeriesData e = dual_series_classical(DualCase::b_squares, 3, 2);
    REQUIRE(e.a == 12);
    REQUIRE(e.b == 0);
  }

  SECTION("series B triangular shapes") {
    DualSeriesData d = dual_series_classical(DualCase::b_triangular, 2, 3);
    REQUIRE(d.a == 2);
    REQUIRE(d.b == 0);
    REQUIRE(d.centralizer == "((Sp_4 x GL_0 x Sp_4)/(Z/2)) x| Z/2");
    REQUIRE_THROWS_AS(dual_series_classical(DualCase::b_triangular, 2, 2),
                      std::logic_error);
  }

  SECTION("series D shapes") {
    DualSeriesData d = dual_series_classical(DualCase::d_squares, 2, 1);
    REQUIRE(d.a == 4);
    REQUIRE(d.b == 1);
    REQUIRE(d.centralizer == "Spin_8 x Spin_2");
    REQUIRE(d.weyl_label == "W(D_4) x W(D_1)");
    DualSeriesData t1 = dual_series_classical(DualCase::d_triangular, 3, 0);
    REQUIRE(t1.a == 2);
    REQUIRE(t1.b == 1);
    REQUIRE(t1.centralizer == "SO_2 x GL_1 x SO_2");
    DualSeriesData t2 = dual_series_classical(DualCase::d_triangular, 4, 0);
    REQUIRE(t2.a == 2);
    REQUIRE(t2.b == 3);
    DualSeriesData t3 = dual_series_classical(DualCase::d_triangular, 3, 7);
    REQUIRE(t3.a == 2);
    REQUIRE(t3.b == 15);
  }

  SECTION("negative indices are rejected") {
    REQUIRE_THROWS_AS(dual_series_classical(DualCase::c_series, -1, 0),
                      std::invalid_argument);
  }
}

TEST_CASE("group spec validation") {
  SECTION("alias canonicalization") {
    REQUIRE(make_group_spec(Series::C, "psp", 6, 3).isogeny == Isogeny::ad);
    REQUIRE(make_group_spec(Series::C, "sp", 6, 3).isogeny == Isogeny::sc);
    REQUIRE(make_group_spec(Series::D, "spin", 8, 3).isogeny == Isogeny::sc);
    REQUIRE(make_group_spec(Series::B, "so", 5, 3).isogeny == Isogeny::ad);
    REQUIRE(make_group_spec(Series::D, "so", 8, 3).isogeny == Isogeny::so);
    REQUIRE(make_group_spec(Series::E8, "sc", 8, 3).isogeny == Isogeny::ad);
  }

  SECTION("invalid specs are rejected") {
    REQUIRE_THROWS_AS(make_group_spec(Series::A, "sc", 1, 3),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_group_spec(Series::D, "sc", 3, 3),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_group_spec(Series::D, "half_spin", 7, 3),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_group_spec(Series::C, "so", 4, 3),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_group_spec(Series::A, "sc", 4, 6),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_group_spec(Series::G2, "ad", 3, 5),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_group_spec(Series::A, "half_spin", 4, 5),
                      std::invalid_argument);
  }

  SECTION("exceptional rank defaults") {
    REQUIRE(make_group_spec(Series::F4, "ad", 0, 5).rank == 4);
    REQUIRE(make_group_spec(Series::E7, "sc", 0, 5).rank == 7);
  }
}

TEST_CASE("type A enumeration") {
  SECTION("frozen counts") {
    REQUIRE(enumerate(Series::A, "sc", 3, 2).size() == 6);
    REQUIRE(enumerate(Series::A, "sc", 4, 2).empty());
  }

  SECTION("count sweep against the totient oracle") {
    for (long n = 2; n <= 12; ++n) {
      for (long p : {0L, 2L, 3L, 5L, 7L, 11L, 13L}) {
        auto data = enumerate(Series::A, "sc", n, p);
        long expected = (p != 0 && n % p == 0) ? 0 : n * oracle_phi(n);
        INFO("n " << n << " p " << p);
        REQUIRE(static_cast<long>(data.size()) == expected);
        require_labels_distinct(data);
      }
    }
  }

  SECTION("labels are injective on the centre, so none descend") {
    REQUIRE(enumerate(Series::A, "ad", 5, 3).empty());
    REQUIRE(enumerate(Series::A, "ad", 7, 0).empty());
  }

  SECTION("datum shape") {
    auto data = enumerate(Series::A, "sc", 5, 3);
    REQUIRE(data.size() == 20);
    for (const auto& d : data) {
      REQUIRE(d.support_unipotent == "regular, Jordan type (5)");
      REQUIRE(d.component_group == "Z(G) = Z/5");
      REQUIRE_FALSE(d.shintani.has_value());
      REQUIRE(d.machine.family_group.empty());
      REQUIRE(check_shintani(d) == std::nullopt);
      REQUIRE(d.central_character.find("injective") != std::string::npos);
    }
  }
}

TEST_CASE("classical enumeration counts") {
  SECTION("frozen spec example") {
    auto data = enumerate(Series::C, "psp", 6, 3);
    REQUIRE(data.size() == 3);
    REQUIRE(data[0].support_pair == std::make_pair(0L, 6L));
    REQUIRE(data[1].support_pair == std::make_pair(3L, 3L));
    REQUIRE(data[2].support_pair == std::make_pair(3L, 3L));
    REQUIRE(data[0].label == "({0,1,2,3},{}) x ({0,1,2},{})");
    REQUIRE(data[1].label == "1 x ({0,1,2,3,4},{}) (1/2)");
    REQUIRE(data[2].label == "1 x ({0,1,2,3,4},{}) (2/2)");
  }

  SECTION("branch sweeps against independent counting oracles") {
    for (long n = 2; n <= 40; ++n) {
      INFO("rank " << n);
      REQUIRE(static_cast<long>(enumerate(Series::C, "ad", n, 3).size()) ==
              oracle_c_ad(n));
      REQUIRE(static_cast<long>(enumerate(Series::C, "sc", n, 3).size()) ==
              oracle_c_sc(n));
      REQUIRE(static_cast<long>(enumerate(Series::B, "ad", n, 3).size()) ==
              oracle_b_ad(n));
      REQUIRE(static_cast<long>(enumerate(Series::B, "sc", n, 3).size()) ==
              oracle_b_sc(n));
      REQUIRE(static_cast<long>(enumerate(Series::B, "sc", n, 2).size()) ==
              oracle_bc_char2(n));
      REQUIRE(static_cast<long>(enumerate(Series::C, "ad", n, 2).size()) ==
              oracle_bc_char2(n));
    }
    for (long n = 4; n <= 40; ++n) {
      INFO("rank " << n);
      REQUIRE(static_cast<long>(enumerate(Series::D, "ad", n, 3).size()) ==
              oracle_d_ad(n));
      REQUIRE(static_cast<long>(enumerate(Series::D, "so", n, 3).size()) ==
              oracle_d_so(n));
      REQUIRE(static_cast<long>(enumerate(Series::D, "sc", n, 3).size()) ==
              oracle_d_sc(n));
      REQUIRE(static_cast<long>(enumerate(Series::D, "ad", n, 2).size()) ==
              oracle_d_char2(n));
      if (n % 2 == 0)
        REQUIRE(static_cast<long>(
                    enumerate(Series::D, "half_spin", n, 3).size()) ==
                oracle_d_half_spin(n));
    }
    // Characteristic 0 behaves as a large prime.
    REQUIRE(enumerate(Series::C, "ad", 6, 0).size() ==
            enumerate(Series::C, "ad", 6, 7).size());
  }

  SECTION("support pairs decompose the rank") {
    for (long n = 2; n <= 20; ++n) {
      for (const auto& d : enumerate(Series::C, "sc", n, 3)) {
        REQUIRE(d.support_pair.has_value());
        REQUIRE(d.support_pair->first + d.support_pair->second == n);
      }
      for (const auto& d : enumerate(Series::B, "sc", n, 3)) {
        REQUIRE(d.support_pair.has_value());
        REQUIRE(d.support_pair->first + d.support_pair->second ==
                2 * n + 1);
      }
    }
    for (long n = 4; n <= 20; ++n)
      for (const char* iso : {"sc", "ad", "so"})
        for (const auto& d : enumerate(Series::D, iso, n, 3)) {
          REQUIRE(d.support_pair.has_value());
          REQUIRE(d.support_pair->first + d.support_pair->second == 2 * n);
        }
  }

  SECTION("labels are distinct within each enumeration") {
    for (long n = 2; n <= 24; ++n) {
      require_labels_distinct(enumerate(Series::B, "sc", n, 3));
      require_labels_distinct(enumerate(Series::B, "ad", n, 3));
      require_labels_distinct(enumerate(Series::C, "sc", n, 3));
      require_labels_distinct(enumerate(Series::C, "ad", n, 3));
    }
    for (long n = 4; n <= 24; ++n) {
      require_labels_distinct(enumerate(Series::D, "sc", n, 3));
      require_labels_distinct(enumerate(Series::D, "ad", n, 3));
      require_labels_distinct(enumerate(Series::D, "so", n, 3));
      if (n % 2 == 0)
        require_labels_distinct(enumerate(Series::D, "half_spin", n, 3));
    }
  }

  SECTION("central character bookkeeping") {
    for (const auto& d : enumerate(Series::C, "sc", 7, 3))
      REQUIRE(d.central_character == "nontrivial");
    for (const auto& d : enumerate(Series::C, "sc", 10, 3))
      REQUIRE(d.central_character == "trivial");
    for (const auto& d : enumerate(Series::C, "ad", 6, 3))
      REQUIRE(d.central_character == "trivial");
    for (const auto& d : enumerate(Series::D, "so", 10, 3))
      REQUIRE(d.central_character == "nontrivial");
    for (const auto& d : enumerate(Series::D, "so", 8, 3))
      REQUIRE(d.central_character == "trivial");
    auto spin_odd = enumerate(Series::D, "sc", 5, 3);
    REQUIRE(spin_odd.size() == 4);
    for (std::size_t i = 0; i < spin_odd.size(); ++i)
      REQUIRE(spin_odd[i].central_character ==
              (i % 2 == 0 ? "injective (xi)" : "injective (xi^3)"));
    auto b_sc = enumerate(Series::B, "sc", 12, 3);
    REQUIRE(b_sc.size() == 5);
    REQUIRE(b_sc[0].central_character == "trivial");
    REQUIRE(b_sc[1].central_character == "trivial");
    REQUIRE(b_sc[2].central_character == "trivial");
    REQUIRE(b_sc[3].central_character == "nontrivial");
    REQUIRE(b_sc[4].central_character == "nontrivial");
  }

  SECTION("unipotent-support rows in characteristic 2") {
    auto bc = enumerate(Series::B, "sc", 6, 2);
    REQUIRE(bc.size() == 1);
    REQUIRE(bc[0].support_unipotent == "(4,8)");
    REQUIRE(bc[0].component_group == "(Z/2)^2");
    REQUIRE(bc[0].label == "({0,1,2,3,4},{}) = ((-1,1),(-1,-1)) in M((Z/2)^2)");
    REQUIRE(enumerate(Series::C, "sc", 6, 2) == bc);
    auto c12 = enumerate(Series::C, "ad", 12, 2);
    REQUIRE(c12.size() == 1);
    REQUIRE(c12[0].support_unipotent == "(4,8,12)");
    auto d16 = enumerate(Series::D, "so", 16, 2);
    REQUIRE(d16.size() == 1);
    REQUIRE(d16[0].support_unipotent == "(2,6,10,14)");
    REQUIRE(d16[0].component_group == "(Z/2)^3");
    REQUIRE(enumerate(Series::D, "sc", 4, 2).size() == 1);
    REQUIRE(enumerate(Series::D, "sc", 9, 2).empty());
    REQUIRE(enumerate(Series::D, "sc", 16, 2).size() == 1);
  }

  SECTION("enumeration is deterministic") {
    auto a = enumerate(Series::D, "sc", 16, 3);
    auto b = enumerate(Series::D, "sc", 16, 3);
    REQUIRE(a == b);
  }
}

TEST_CASE("exceptional enumeration") {
  SECTION("frozen counts and labels") {
    auto g2 = enumerate(Series::G2, "ad", 2, 5);
    REQUIRE(g2.size() == 4);
    REQUIRE(g2[0].label == "(g2,eps)");
    REQUIRE(g2[1].label == "(g3,theta)");
    REQUIRE(g2[2].label == "(g3,theta^2)");
    REQUIRE(g2[3].label == "(1,eps)");
    REQUIRE(enumerate(Series::E8, "ad", 8, 7).size() == 13);
  }

  SECTION("counts per characteristic") {
    std::map<long, std::size_t> g2_counts = {{0, 4}, {2, 4}, {3, 4}, {5, 4}};
    for (auto [p, want] : g2_counts)
      REQUIRE(enumerate(Series::G2, "ad", 2, p).size() == want);
    for (long p : {0L, 2L, 3L, 5L, 7L})
      REQUIRE(enumerate(Series::F4, "ad", 4, p).size() == 7);
    for (long p : {0L, 2L, 3L, 5L, 7L})
      REQUIRE(enumerate(Series::E8, "ad", 8, p).size() == 13);
    REQUIRE(enumerate(Series::E6, "ad", 6, 5).size() == 6);
    REQUIRE(enumerate(Series::E6, "ad", 6, 3).size() == 2);
    REQUIRE(enumerate(Series::E6, "sc", 6, 5).size() == 14);
    REQUIRE(enumerate(Series::E6, "sc", 6, 2).size() == 14);
    REQUIRE(enumerate(Series::E7, "ad", 7, 3).size() == 4);
    REQUIRE(enumerate(Series::E7, "ad", 7, 2).size() == 2);
    REQUIRE(enumerate(Series::E7, "sc", 7, 5).size() == 8);
    REQUIRE(enumerate(Series::E7, "sc", 7, 3).size() == 8);
  }

  SECTION("isogenous groups coincide when the centre degenerates") {
    REQUIRE(enumerate(Series::E6, "sc", 6, 3) ==
            enumerate(Series::E6, "ad", 6, 3));
    REQUIRE(enumerate(Series::E7, "sc", 7, 2) ==
            enumerate(Series::E7, "ad", 7, 2));
  }

  SECTION("subregular component group moves with the characteristic") {
    auto good = enumerate(Series::G2, "ad", 2, 5);
    REQUIRE(good[3].support_unipotent == "subregular");
    REQUIRE(good[3].component_group == "S_3");
    auto bad = enumerate(Series::G2, "ad", 2, 3);
    REQUIRE(bad[3].label == "(1,eps)");
    REQUIRE(bad[3].component_group == "Z/2");
  }

  SECTION("uncertainty flags") {
    std::map<std::string, int> expected = {
        {"g2", 0}, {"f4", 0}, {"e8", 0}, {"e6_ad", 0},
        {"e6_sc", 18}, {"e7_ad", 0}, {"e7_sc", 6}};
    for (const auto& name : table_names()) {
      int uncertain = 0;
      for (const auto& row : exceptional_table(name).rows)
        if (row.uncertain) ++uncertain;
      INFO("table " << name);
      REQUIRE(uncertain == expected[name]);
    }
    for (const auto& d : enumerate(Series::E6, "sc", 6, 5)) {
      bool unipotent_row = d.lusztig_series == "unipotent";
      REQUIRE(d.uncertain == !unipotent_row);
    }
  }

  SECTION("labels are distinct per characteristic") {
    for (long p : {0L, 2L, 3L, 5L, 7L}) {
      require_labels_distinct(enumerate(Series::E8, "ad", 8, p));
      require_labels_distinct(enumerate(Series::F4, "ad", 4, p));
      require_labels_distinct(enumerate(Series::E6, "sc", 6, p));
      require_labels_distinct(enumerate(Series::E7, "sc", 7, p));
    }
  }
}

TEST_CASE("table serialization") {
  SECTION("load, serialize, reload is the identity on the bytes") {
    for (const auto& name : table_names()) {
      std::string text = table_text(name);
      INFO("table " << name);
      REQUIRE(serialize_table(parse_table(text)) == text);
    }
  }

#ifdef CHARSHEAF_SOURCE_DATA_DIR
  SECTION("embedded copies match the source files") {
    for (const auto& name : table_names()) {
      std::ifstream in(std::string(CHARSHEAF_SOURCE_DATA_DIR) + "/" + name +
                           ".json",
                       std::ios::binary);
      REQUIRE(in.good());
      std::ostringstream contents;
      contents << in.rdbuf();
      INFO("table " << name);
      REQUIRE(contents.str() == table_text(name));
    }
  }

  SECTION("data directory override") {
    setenv("CHARSHEAF_DATA_DIR", CHARSHEAF_SOURCE_DATA_DIR, 1);
    std::string text = table_text("g2");
    unsetenv("CHARSHEAF_DATA_DIR");
    REQUIRE(text == table_text("g2"));
    setenv("CHARSHEAF_DATA_DIR", "/nonexistent-data-dir", 1);
    REQUIRE_THROWS_AS(table_text("g2"), std::runtime_error);
    unsetenv("CHARSHEAF_DATA_DIR");
  }
#endif

  SECTION("malformed input is reported") {
    REQUIRE_THROWS_AS(parse_table("not json"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_table("{\"schema_version\": 2}"),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(table_text("no_such_table"), std::invalid_argument);
  }

  SECTION("parsed tables are memoized") {
    const ExceptionalTable& a = exceptional_table("f4");
    const ExceptionalTable& b = exceptional_table("f4");
    REQUIRE(&a == &b);
  }
}

TEST_CASE("condition predicates") {
  REQUIRE(condition_allows("any", 0));
  REQUIRE(condition_allows("any", 7));
  REQUIRE(condition_allows("p = 2", 2));
  REQUIRE_FALSE(condition_allows("p = 2", 3));
  REQUIRE_FALSE(condition_allows("p = 2", 0));
  REQUIRE(condition_allows("p != 2", 0));
  REQUIRE(condition_allows("p != 2", 3));
  REQUIRE_FALSE(condition_allows("p != 2", 2));
  REQUIRE(condition_allows("p != 2,3", 5));
  REQUIRE_FALSE(condition_allows("p != 2,3", 3));
  REQUIRE(condition_allows("p != 2,3", 0));
  REQUIRE_THROWS_AS(condition_allows("q = 2", 2), std::invalid_argument);
  REQUIRE_THROWS_AS(condition_allows("p < 2", 2), std::invalid_argument);
}

TEST_CASE("twisting eigenvalues") {
  SECTION("frozen values") {
    auto g2 = enumerate(Series::G2, "ad", 2, 5);
    REQUIRE(g2[0].shintani == Cyclotomic(-1));
    auto e8 = enumerate(Series::E8, "ad", 8, 7);
    std::map<std::string, Cyclotomic> want;
    for (long j = 1; j <= 4; ++j)
      want["(g5," + printed_eigenvalue(5, j) + ")"] =
          Cyclotomic::root_of_unity(5, j);
    int seen = 0;
    for (const auto& d : e8) {
      auto it = want.find(d.label);
      if (it == want.end()) continue;
      ++seen;
      REQUIRE(d.shintani == it->second);
    }
    REQUIRE(seen == 4);
    auto f4 = enumerate(Series::F4, "ad", 4, 7);
    bool found = false;
    for (const auto& d : f4)
      if (d.label == "(g2',eps)") {
        found = true;
        REQUIRE(d.shintani == Cyclotomic(1));
      }
    REQUIRE(found);
  }

  SECTION("printed forms match the machine encoding") {
    for (const auto& name : table_names())
      for (const auto& row : exceptional_table(name).rows) {
        INFO("table " << name << " row " << row.label);
        REQUIRE(printed_eigenvalue(row.eigenvalue_order,
                                   row.eigenvalue_power) == row.eigenvalue);
      }
  }

  SECTION("label recomputation agrees on every row") {
    for (const auto& name : table_names())
      for (const auto& row : exceptional_table(name).rows) {
        CuspidalSheafDatum d = datum_from_table_row(row);
        INFO("table " << name << " row " << row.label << " under "
                      << row.condition);
        std::optional<bool> result;
        REQUIRE_NOTHROW(result = check_shintani(d));
        REQUIRE(result.has_value());
        if (d.uncertain) {
          // Multiplicity of these rows is conjectural; the eigenvalue
          // cross-check still runs but only reports.
          CHECK_NOFAIL(*result);
        } else {
          REQUIRE(*result);
        }
      }
  }

  SECTION("eigenvalue tampering is detected") {
    auto g2 = enumerate(Series::G2, "ad", 2, 5);
    CuspidalSheafDatum d = g2[0];
    d.shintani = Cyclotomic(1);
    REQUIRE(check_shintani(d) == false);
  }
}
