#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "depsum/adder.hpp"
#include "depsum/derived.hpp"
#include "depsum/discrete.hpp"
#include "depsum/polyadder.hpp"

using namespace depsum;

namespace {
RationalPoly c(std::int64_t n) { return RationalPoly::constant(Rational(n)); }
RationalPoly X() { return RationalPoly::variable(kVarX); }
}  // namespace

TEST_CASE("faulhaber_sum basics") {
  FaulhaberAdder a;
  // Sum^x 1 = x, symbolically
  CHECK(a.sum(RationalPoly::variable(kVarU), c(1)) == RationalPoly::variable(kVarU));
  CHECK(faulhaber_sum(c(10), X()) == c(55));
  // Sum X^2 = (2X^3+3X^2+X)/6 evaluated at x
  RationalPoly f2 = sum_operator(RationalPoly::variable(kVarX, 2));
  CHECK(faulhaber_sum(c(4), RationalPoly::variable(kVarX, 2)) == f2.substitute(kVarX, c(4)));
  CHECK(faulhaber_sum(c(4), RationalPoly::variable(kVarX, 2)) == c(30));
}

TEST_CASE("faulhaber_flatten") {
  // p = 1: Y + (X-1)
  CHECK(faulhaber_flatten(c(1)) ==
        RationalPoly::variable(kVarY) + X() - c(1));
  // p = X: Y + (X-1)X/2
  RationalPoly expect = RationalPoly::variable(kVarY) +
                        Rational(1, 2) * ((X() - c(1)) * X());
  CHECK(faulhaber_flatten(X()) == expect);
  // evaluation at (i=2, j=1) with p=X matches nat_flatten on the table [1,2]
  Rational v = faulhaber_flatten(X()).eval(Rational(2), Rational(1));
  CHECK(v == Rational(nat_flatten(2, {1, 2}, 2, 1)));
}

TEST_CASE("representability: faulhaber_sum equals nat_sum on induced tables") {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    RationalPoly p;
    int deg = static_cast<int>(rng.next_below(6));
    for (int k = 0; k <= deg; ++k)
      p += Rational(rng.next_int(0, 3)) * RationalPoly::variable(kVarX, k);
    for (std::int64_t m : {0, 1, 2, 7, 19, 30}) {
      std::vector<std::int64_t> table;
      for (std::int64_t i = 1; i <= m; ++i) {
        Rational v = p.eval(Rational(i));
        REQUIRE(v.is_integer());
        table.push_back(v.num().to_i64());
      }
      CHECK(faulhaber_sum(c(m), p) == c(nat_sum(m, table)));
    }
  }
}

TEST_CASE("axiom identities are exact polynomial identities") {
  auto r = faulhaber_axiom_identities(60, 2024, 5);
  CHECK(r.passed());
  CHECK(r.cases_run == 60);
}

TEST_CASE("shift law sanity at p=X, x=2, y=3") {
  // both sides are Sum_{i<=5} i = 15
  FaulhaberAdder a;
  RationalPoly lhs = a.sum(c(5), X());
  RationalPoly rhs = a.sum(c(2), X()) +
                     sum_operator(X().substitute(kVarX, X() + c(2))).substitute(kVarX, c(3));
  CHECK(lhs == c(15));
  CHECK(lhs == rhs);
}

TEST_CASE("core axiom suite: faulhaber") {
  FaulhaberAdder a;
  CHECK(check_right_unit(a, 200, 71).passed());
  CHECK(check_left_unit(a, 200, 72).passed());
  CHECK(check_sum_assoc(a, 200, 73).passed());
  CHECK(check_flatten_assoc(a, 120, 24, 74).passed());
  CHECK(check_fubini(a, 120, 75).passed());
  CHECK(check_zero(a, 200, 76).passed());
  CHECK(check_naturality(a, {1, 0}, 40, 77).passed());
  CHECK(check_monoid_laws(a, 150, 78).passed());
  CHECK(check_right_distributivity(a, 150, 79).passed());
}

TEST_CASE("fib category laws hold for the affine-line adder") {
  CHECK(check_fib_category(FaulhaberAdder{}, 60, 81).passed());
}
