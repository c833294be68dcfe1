#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "depsum/modules.hpp"

using namespace depsum;

TEST_CASE("monoid modules satisfy the right-module axioms") {
  auto catalog = monoid_catalog();
  CHECK(catalog.size() >= 20);
  for (const auto& mon : catalog) {
    MonoidModule mod(mon);
    auto r = check_right_module(mod, 120, 17);
    INFO(mon.name);
    CHECK(r.passed());
  }
}

TEST_CASE("monoid ↔ module round trip is the identity") {
  for (const auto& mon : monoid_catalog()) {
    MonoidModule mod(mon);
    FiniteMonoid rebuilt = mod.rebuild_monoid();
    INFO(mon.name);
    CHECK(rebuilt.size == mon.size);
    CHECK(rebuilt.identity == mon.identity);
    CHECK(rebuilt.op == mon.op);
  }
}

TEST_CASE("fold sums in a concrete monoid module") {
  // ({0..6}, +) truncated is not associative, so use Z/7 and check a fold
  FiniteMonoid z7 = monoid_catalog()[5];
  CHECK(z7.name == "Z/7");
  MonoidModule mod(z7);
  CHECK(mod.msum(3, MonoidModule::MFamily{{1, 2, 3}}) == 6);
}

TEST_CASE("pointed sets are F1-modules") {
  PointedSetModule mod(5);
  CHECK(check_right_module(mod, 100, 23).passed());
  // the empty sum lands on the basepoint
  CHECK(mod.msum(0, PointedSetModule::MFamily{}) == 0);
}

TEST_CASE("N-linear maps are exactly monoid homomorphisms") {
  NatPlusModule nat_mod;
  // doubling is additive
  auto doubling = [](std::int64_t m) { return 2 * m; };
  CHECK(check_linear_map(doubling, nat_mod, nat_mod, 300, 31).passed());
  // identity
  auto ident = [](std::int64_t m) { return m; };
  CHECK(check_linear_map(ident, nat_mod, nat_mod, 300, 32).passed());
  // m ↦ m+1 is not: the empty sum already separates the two sides
  auto shift = [](std::int64_t m) { return m + 1; };
  auto r = check_linear_map(shift, nat_mod, nat_mod, 300, 33);
  CHECK_FALSE(r.passed());
  CHECK(shift(nat_mod.msum(0, NatPlusModule::MFamily{})) !=
        nat_mod.msum(0, NatPlusModule::MFamily{}));
}

TEST_CASE("Euclidean space is a right module over the real line") {
  EuclideanModule mod(2);
  CHECK(check_right_module(mod, 60, 41).passed());

  // ∫_0^1 (t, 1) dt = (0.5, 1.0)
  auto v = vector_module_sum(
      1.0, [](double t) { return std::vector<double>{t, 1.0}; }, 2);
  CHECK(std::abs(v[0] - 0.5) < 1e-8);
  CHECK(std::abs(v[1] - 1.0) < 1e-8);
  // x = 0 gives the zero vector
  auto z = vector_module_sum(
      0.0, [](double t) { return std::vector<double>{t, 1.0}; }, 2);
  CHECK(std::abs(z[0]) < 1e-12);
  CHECK(std::abs(z[1]) < 1e-12);
  // the negative-extent convention
  auto neg = vector_module_sum(
      -1.0, [](double) { return std::vector<double>{1.0, 0.0}; }, 2);
  CHECK(std::abs(neg[0] + 1.0) < 1e-8);
  CHECK(std::abs(neg[1]) < 1e-12);
}

TEST_CASE("matrix maps are R-linear on the Euclidean module") {
  EuclideanModule mod(2);
  // T = [[1, 2], [0, -1]]
  auto T = [](const std::vector<double>& v) {
    return std::vector<double>{v[0] + 2.0 * v[1], -v[1]};
  };
  CHECK(check_linear_map(T, mod, mod, 60, 51).passed());
  // a non-linear map fails
  auto bad = [](const std::vector<double>& v) {
    return std::vector<double>{v[0] * v[0], v[1]};
  };
  CHECK_FALSE(check_linear_map(bad, mod, mod, 60, 52).passed());
}

TEST_CASE("[0,n] is a left module over [0,1]") {
  IntervalLeftModule mod(2.0);
  CHECK(check_left_module(mod, 60, 61).passed());

  // const-1 family returns m itself
  CHECK(std::abs(interval_left_module_sum(2.0, [](double) { return 1.0; }, 2.0) - 2.0) < 1e-8);
  // m=2, f(t)=t/2: ∫_0^2 t/2 dt = 1
  CHECK(std::abs(interval_left_module_sum(2.0, [](double t) { return t / 2.0; }, 2.0) - 1.0) <
        1e-8);
  CHECK(std::abs(interval_left_module_sum(0.0, [](double) { return 1.0; }, 2.0)) < 1e-12);
  // sums stay inside [0, n]
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    double m = mod.gen_melem(rng);
    auto f = mod.gen_afamily(rng, mod.mfiber_of(m));
    double s = mod.lsum(m, f);
    CHECK(s >= -1e-9);
    CHECK(s <= 2.0 + 1e-9);
  }
}
