#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "depsum/bigint.hpp"
#include "depsum/faulhaber.hpp"
#include "depsum/poly.hpp"
#include "depsum/rational.hpp"
#include "depsum/rng.hpp"

using namespace depsum;

namespace {

// Oracle: Bernoulli numbers via the Akiyama–Tanigawa triangle, which produces
// the +1/2 convention directly and shares nothing with the recurrence in
// faulhaber.hpp.
Rational bernoulli_oracle(int n) {
  std::vector<Rational> row(n + 2);
  for (int j = 0; j <= n + 1; ++j) row[j] = Rational(1, j + 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= n - i + 1; ++j) row[j] = Rational(j + 1) * (row[j] - row[j + 1]);
  return row[0];
}

// Oracle: plain power-sum loop.
Rational power_sum_oracle(int d, int m) {
  Rational acc(0);
  for (int k = 1; k <= m; ++k) acc = acc + Rational::pow(Rational(k), static_cast<unsigned>(d));
  return acc;
}

RationalPoly random_poly(Rng& rng, int max_deg) {
  RationalPoly p;
  int deg = static_cast<int>(rng.next_below(max_deg + 1));
  for (int i = 0; i <= deg; ++i) {
    std::int64_t num = rng.next_int(-9, 9);
    std::int64_t den = rng.next_int(1, 5);
    if (num == 0) continue;
    p += Rational(num, den) * RationalPoly::variable(kVarX, i);
  }
  return p;
}

}  // namespace

TEST_CASE("bigint basic arithmetic and string round trip") {
  CHECK(BigInt::from_string("123456789012345678901234567890").to_string() ==
        "123456789012345678901234567890");
  CHECK((BigInt(7) + BigInt(-9)).to_string() == "-2");
  CHECK((BigInt::from_string("999999999") * BigInt::from_string("999999999")).to_string() ==
        "999999998000000001");
  CHECK(BigInt::pow(BigInt(2), 100).to_string() == "1267650600228229401496703205376");
  CHECK(BigInt::gcd(BigInt(48), BigInt(-18)) == BigInt(6));
}

TEST_CASE("bigint divmod satisfies a = q*b + r with |r| < |b|") {
  Rng rng(20240811);
  for (int i = 0; i < 300; ++i) {
    BigInt a = BigInt(rng.next_int(-1000000, 1000000)) * BigInt(rng.next_int(0, 1000000)) +
               BigInt(rng.next_int(-999, 999));
    BigInt b(rng.next_int(-500000, 500000));
    if (b.is_zero()) continue;
    auto [q, r] = BigInt::divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    if (!r.is_zero()) CHECK(r.signum() == a.signum());
  }
}

TEST_CASE("rational reduction and comparisons") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) < Rational(3, 4));
  CHECK(Rational::from_string("-4/7").to_string() == "-4/7");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("bernoulli matches the plus convention") {
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(1) == Rational(1, 2));  // the convention the Faulhaber formula needs
  CHECK(bernoulli(2) == Rational(1, 6));
  for (int n = 0; n <= 20; ++n) CHECK(bernoulli(n) == bernoulli_oracle(n));
  for (int k = 1; k <= 10; ++k) CHECK(bernoulli(2 * k + 1) == Rational(0));
}

TEST_CASE("faulhaber polynomials reproduce power sums exactly") {
  CHECK(faulhaber_poly(0) == RationalPoly::variable(kVarX));
  RationalPoly f1 = Rational(1, 2) * RationalPoly::variable(kVarX, 2) +
                    Rational(1, 2) * RationalPoly::variable(kVarX);
  CHECK(faulhaber_poly(1) == f1);
  CHECK(faulhaber_poly(2).eval(Rational(3)) == Rational(14));
  for (int d = 0; d <= 8; ++d) {
    RationalPoly fd = faulhaber_poly(d);
    for (int m = 0; m <= 50; ++m) CHECK(fd.eval(Rational(m)) == power_sum_oracle(d, m));
  }
}

TEST_CASE("sum operator") {
  CHECK(sum_operator(RationalPoly::constant(Rational(1))) == RationalPoly::variable(kVarX));
  CHECK(sum_operator(RationalPoly::variable(kVarX)) == faulhaber_poly(1));
  CHECK(sum_operator(RationalPoly::variable(kVarX, 2)).eval(Rational(4)) == Rational(30));

  SUBCASE("linearity on random polynomials") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
      RationalPoly p = random_poly(rng, 6), q = random_poly(rng, 6);
      CHECK(sum_operator(p + q) == sum_operator(p) + sum_operator(q));
    }
  }
}

TEST_CASE("polynomial arithmetic is a commutative ring") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    RationalPoly a = random_poly(rng, 5), b = random_poly(rng, 5), c = random_poly(rng, 5);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("compose, substitute, evaluate") {
  RationalPoly x = RationalPoly::variable(kVarX);
  RationalPoly xsq = RationalPoly::variable(kVarX, 2);
  RationalPoly xp1 = x + RationalPoly::constant(Rational(1));
  CHECK(xsq.substitute(kVarX, xp1) ==
        xsq + Rational(2) * x + RationalPoly::constant(Rational(1)));

  RationalPoly g = RationalPoly::variable(kVarY, 2);
  CHECK(g.substitute(kVarY, x) == xsq);

  CHECK(faulhaber_poly(1).eval(Rational(10)) == Rational(55));
  CHECK_THROWS(RationalPoly::variable(5));
}

TEST_CASE("identity check by points") {
  RationalPoly x = RationalPoly::variable(kVarX);
  RationalPoly xsq = RationalPoly::variable(kVarX, 2);
  CHECK(poly_identity_check_by_points(xsq, xsq, 3));
  CHECK_FALSE(poly_identity_check_by_points(x, x + RationalPoly::constant(Rational(1)), 3));
  CHECK(poly_identity_check_by_points(Rational(2) * sum_operator(x), xsq + x, 3));
}

TEST_CASE("printing") {
  CHECK(faulhaber_poly(2).to_string_common_den() == "(2*X^3 + 3*X^2 + X)/6");
  CHECK(RationalPoly().to_string() == "0");
  RationalPoly p = RationalPoly::variable(kVarX) - RationalPoly::constant(Rational(1));
  CHECK(p.to_string() == "X - 1");
}
