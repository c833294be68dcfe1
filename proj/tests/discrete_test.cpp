#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "depsum/adder.hpp"
#include "depsum/discrete.hpp"

using namespace depsum;

TEST_CASE("nat_sum basics") {
  CHECK(nat_sum(3, {1, 2, 3}) == 6);
  CHECK(nat_sum(0, {}) == 0);
  CHECK(nat_sum(5, {1, 1, 1, 1, 1}) == 5);
  CHECK_THROWS(nat_sum(2, {1}));
}

TEST_CASE("nat_flatten positions") {
  CHECK(nat_flatten(2, {2, 3}, 2, 1) == 3);
  CHECK(nat_flatten(2, {2, 3}, 1, 1) == 1);
  CHECK(nat_flatten(2, {2, 3}, 2, 3) == 5);
  CHECK_THROWS(nat_flatten(2, {2, 3}, 3, 1));
  CHECK_THROWS(nat_flatten(2, {2, 3}, 1, 3));
}

TEST_CASE("nat_flatten is a bijection onto [1, sum]") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t x = rng.next_int(0, 8);
    std::vector<std::int64_t> f;
    for (int i = 0; i < x; ++i) f.push_back(rng.next_int(0, 5));
    std::int64_t total = std::accumulate(f.begin(), f.end(), std::int64_t{0});
    std::set<std::int64_t> seen;
    for (std::int64_t i = 1; i <= x; ++i)
      for (std::int64_t j = 1; j <= f[i - 1]; ++j) {
        std::int64_t pos = nat_flatten(x, f, i, j);
        CHECK(pos >= 1);
        CHECK(pos <= total);
        CHECK(seen.insert(pos).second);
      }
    CHECK(static_cast<std::int64_t>(seen.size()) == total);
  }
}

TEST_CASE("int_sum signed convention") {
  CHECK(int_sum(-1, [](std::int64_t) { return 7; }) == -7);
  // x=-2, f(i)=i: -(f(0) + f(-1)) = -(0 + -1) = 1
  CHECK(int_sum(-2, [](std::int64_t i) { return i; }) == 1);
  CHECK(int_sum(3, [](std::int64_t i) { return i; }) == 6);
}

TEST_CASE("f1 sums enumerate the display") {
  CHECK(f1_sum(0, {}) == 0);
  CHECK(f1_sum(1, {1}) == 1);
  CHECK(f1_sum(1, {0}) == 0);
  CHECK_THROWS(f1_sum(0, {1}));
}

TEST_CASE("monoid adder multiplies on the left") {
  CHECK(monoid_adder_sum("ab", "c") == "cab");
  CHECK(monoid_adder_sum("", "y") == "y");
  CHECK(monoid_adder_sum("x", "") == "x");
}

TEST_CASE("derived product recovers native multiplication") {
  NatAdder nat;
  CHECK(product(nat, 3, 4) == 12);
  IntAdder zz;
  CHECK(product(zz, -3, 4) == -12);
  CHECK(product(zz, 3, -4) == -12);
  CHECK(product(zz, -3, -4) == 12);

  // monoid: derived product(x,y) = Sum^y const_x = x·y, exhaustively on short words
  MonoidAdder mon;
  std::vector<std::string> words{""};
  for (char c1 : {'a', 'b', 'c'}) {
    words.push_back(std::string(1, c1));
    for (char c2 : {'a', 'b', 'c'}) {
      words.push_back(std::string{c1, c2});
      for (char c3 : {'a', 'b', 'c'}) words.push_back(std::string{c1, c2, c3});
    }
  }
  for (const auto& x : words)
    for (const auto& y : words) CHECK(product(mon, x, y) == x + y);
}

TEST_CASE("core axiom suite: nat") {
  NatAdder a;
  CHECK(check_right_unit(a, 300, 1).passed());
  CHECK(check_left_unit(a, 300, 2).passed());
  CHECK(check_sum_assoc(a, 300, 3).passed());
  CHECK(check_flatten_assoc(a, 300, 64, 4).passed());
  CHECK(check_fubini(a, 300, 5).passed());
  CHECK(check_zero(a, 300, 6).passed());
  CHECK(check_naturality(a, {0, 0, 1}, 100, 7).passed());
  CHECK(check_monoid_laws(a, 300, 8).passed());
  CHECK(check_right_distributivity(a, 300, 9).passed());
}

TEST_CASE("core axiom suite: int") {
  IntAdder a;
  CHECK(check_right_unit(a, 300, 11).passed());
  CHECK(check_left_unit(a, 300, 12).passed());
  CHECK(check_sum_assoc(a, 300, 13).passed());
  CHECK(check_flatten_assoc(a, 300, 64, 14).passed());
  CHECK(check_fubini(a, 300, 15).passed());
  CHECK(check_zero(a, 300, 16).passed());
  CHECK(check_naturality(a, {1, 0}, 100, 17).passed());
  CHECK(check_monoid_laws(a, 300, 18).passed());
  CHECK(check_right_distributivity(a, 300, 19).passed());
}

TEST_CASE("core axiom suite: f1, exhaustive flavor") {
  F1Adder a;
  auto r = check_right_unit(a, 300, 21);
  CHECK(r.passed());
  CHECK(r.cases_run == 2);  // generator exhaustion reported as a partial run
  CHECK(!r.note.empty());
  CHECK(check_left_unit(a, 300, 22).passed());
  CHECK(check_sum_assoc(a, 300, 23).passed());
  CHECK(check_flatten_assoc(a, 300, 64, 24).passed());
  CHECK(check_fubini(a, 300, 25).passed());
  CHECK(check_zero(a, 300, 26).passed());
  CHECK(check_naturality(a, {0, 1, 0}, 50, 27).passed());
  CHECK(check_monoid_laws(a, 300, 28).passed());
}

TEST_CASE("core axiom suite: monoid (non-commutative)") {
  MonoidAdder a;
  CHECK(check_right_unit(a, 300, 31).passed());
  CHECK(check_left_unit(a, 300, 32).passed());
  CHECK(check_sum_assoc(a, 300, 33).passed());
  CHECK(check_flatten_assoc(a, 300, 64, 34).passed());
  auto fub = check_fubini(a, 300, 35);  // counterexample mode
  CHECK(fub.passed());
  CHECK(fub.note.find("counterexample") != std::string::npos);
  auto z = check_zero(a, 300, 36);  // no zero object: skipped with notice
  CHECK(z.passed());
  CHECK(z.cases_run == 0);
  CHECK(check_monoid_laws(a, 300, 37).passed());
}
