#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "charsheaf/symbol.hpp"

using namespace charsheaf;

namespace {

std::vector<int> run(int from, int to, int step = 1) {
  std::vector<int> v;
  for (int i = from; i <= to; i += step) v.push_back(i);
  return v;
}

Symbol random_symbol(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<int> gap(0, 3);
  std::uniform_int_distribution<int> start(0, 2);
  std::uniform_int_distribution<int> type_pick(0, 2);
  auto make_row = [&]() {
    std::vector<int> row;
    int n = len(rng);
    int cur = start(rng);
    for (int i = 0; i < n; ++i) {
      row.push_back(cur);
      cur += 1 + gap(rng);
    }
    return row;
  };
  SymbolType type = static_cast<SymbolType>(type_pick(rng));
  return normalize(make_row(), make_row(), type);
}

}  // namespace

TEST_CASE("normalization") {
  SECTION("paired zeros strip and decrement") {
    Symbol s = normalize({0, 2}, {0}, SymbolType::B);
    CHECK(s.row_a == std::vector<int>{1});
    CHECK(s.row_b.empty());
  }
  SECTION("reduced input is unchanged") {
    Symbol s = normalize({0, 1, 2}, {}, SymbolType::B);
    CHECK(s.row_a == std::vector<int>{0, 1, 2});
    CHECK(s.row_b.empty());
  }
  SECTION("multiple strip steps") {
    Symbol s = normalize({0, 1, 5}, {0, 1, 2}, SymbolType::C);
    CHECK(s.row_a == std::vector<int>{3});
    CHECK(s.row_b == std::vector<int>{0});
  }
  SECTION("rejects malformed rows") {
    CHECK_THROWS_AS(normalize({2, 1}, {}, SymbolType::B), std::invalid_argument);
    CHECK_THROWS_AS(normalize({0, 0}, {}, SymbolType::B), std::invalid_argument);
    CHECK_THROWS_AS(normalize({-1, 0}, {}, SymbolType::B), std::invalid_argument);
  }
  SECTION("shifts of the staircase normalize back") {
    for (int d = 0; d <= 5; ++d) {
      Symbol base = normalize(run(0, 2 * d), {}, SymbolType::B);
      for (int steps = 0; steps <= 3; ++steps) {
        Symbol shifted = shift(base, steps);
        Symbol back = normalize(shifted.row_a, shifted.row_b, SymbolType::B);
        CHECK(back == base);
      }
    }
  }
  SECTION("idempotent on random input") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
      Symbol s = random_symbol(rng);
      Symbol again = normalize(s.row_a, s.row_b, s.type, s.convention);
      CHECK(again == s);
    }
  }
}

TEST_CASE("rank and defect") {
  SECTION("staircase ranks for both series") {
    Symbol b1 = normalize({0, 1, 2}, {}, SymbolType::B);
    CHECK(rank(b1) == 2);
    for (int d = 1; d <= 10; ++d) {
      Symbol b = normalize(run(0, 2 * d), {}, SymbolType::B);
      CHECK(rank(b) == static_cast<long>(d) * d + d);
      CHECK(defect(b) == 2 * d + 1);
    }
    for (int d = 0; d <= 10; ++d) {
      Symbol dd = normalize(run(0, 2 * d + 1), {}, SymbolType::D);
      CHECK(rank(dd) == static_cast<long>(d + 1) * (d + 1));
      CHECK(defect(dd) == 2 * d + 2);
    }
  }
  SECTION("shift invariance") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 500; ++trial) {
      Symbol s = random_symbol(rng);
      for (int steps = 1; steps <= 3; ++steps) {
        Symbol moved = shift(s, steps);
        CHECK(rank(moved) == rank(s));
        CHECK(defect(moved) == defect(s));
      }
    }
  }
}

TEST_CASE("cuspidal symbols") {
  SECTION("type B hits exactly the d^2+d ranks") {
    auto s6 = cuspidal_symbol(SymbolType::B, 6);
    REQUIRE(s6.has_value());
    CHECK(s6->row_a == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(s6->row_b.empty());
    CHECK_FALSE(cuspidal_symbol(SymbolType::B, 5).has_value());
    for (int d = 1; d <= 10; ++d) {
      auto s = cuspidal_symbol(SymbolType::B, static_cast<long>(d) * d + d);
      REQUIRE(s.has_value());
      CHECK(rank(*s) == static_cast<long>(d) * d + d);
      CHECK(s->row_a == run(0, 2 * d));
    }
    CHECK_FALSE(cuspidal_symbol(SymbolType::B, 0).has_value());
    CHECK_FALSE(cuspidal_symbol(SymbolType::B, 1).has_value());
  }
  SECTION("type D hits exactly the square ranks") {
    auto s4 = cuspidal_symbol(SymbolType::D, 4);
    REQUIRE(s4.has_value());
    CHECK(s4->row_a == std::vector<int>{0, 1, 2, 3});
    for (int d = 0; d <= 10; ++d) {
      long n = static_cast<long>(d + 1) * (d + 1);
      auto s = cuspidal_symbol(SymbolType::D, n);
      REQUIRE(s.has_value());
      CHECK(rank(*s) == n);
    }
    CHECK_FALSE(cuspidal_symbol(SymbolType::D, 5).has_value());
    CHECK_FALSE(cuspidal_symbol(SymbolType::D, 0).has_value());
  }
  SECTION("type C is rejected") {
    CHECK_THROWS_AS(cuspidal_symbol(SymbolType::C, 6), std::invalid_argument);
  }
}

TEST_CASE("cuspidal labels") {
  CuspidalLabel l1 = cuspidal_label(1);
  CHECK(l1.x == std::vector<int>{-1});
  CHECK(l1.chi == std::vector<int>{-1});
  CuspidalLabel l2 = cuspidal_label(2);
  CHECK(l2.x == std::vector<int>{-1, 1});
  CHECK(l2.chi == std::vector<int>{-1, -1});
  CuspidalLabel l3 = cuspidal_label(3);
  CHECK(l3.x == std::vector<int>{-1, 1, -1});
  CHECK(l3.chi == std::vector<int>{-1, -1, -1});
  CHECK_THROWS_AS(cuspidal_label(0), std::invalid_argument);
}

TEST_CASE("special symbols from the classical series encode reduced") {
  for (int d = 1; d <= 6; ++d) {
    Symbol widened = normalize(run(0, 4 * d, 4), {}, SymbolType::B);
    CHECK(widened.row_a == run(0, 4 * d, 4));
    CHECK(widened.row_b.empty());

    Symbol evens = normalize(run(0, 2 * d, 2), {}, SymbolType::C);
    CHECK(evens.row_a == run(0, 2 * d, 2));

    Symbol odds = normalize({}, run(1, 2 * d + 1, 2), SymbolType::C);
    CHECK(odds.row_a.empty());
    CHECK(odds.row_b == run(1, 2 * d + 1, 2));

    Symbol shorter = normalize(run(0, 2 * d - 2, 2), {}, SymbolType::B);
    CHECK(shorter.row_a == run(0, 2 * d - 2, 2));
  }
}
