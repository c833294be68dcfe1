#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "depsum/adder.hpp"
#include "depsum/cat_adder.hpp"
#include "depsum/catmodule.hpp"
#include "depsum/discrete.hpp"

using namespace depsum;

namespace {

// Oracle: morphism count of the oplax colimit by raw hom-set enumeration.
int oplax_mor_count_oracle(const FinCat& index, const CatFamily& fam) {
  int count = 0;
  for (int a = 0; a < index.n_mors(); ++a) {
    const auto& am = index.mors[static_cast<std::size_t>(a)];
    for (int j = 0; j < fam.fiber(am.src).n_objects; ++j) {
      int faj = fam.action(a).on_obj(j);
      for (int jp = 0; jp < fam.fiber(am.tgt).n_objects; ++jp)
        count += static_cast<int>(fam.fiber(am.tgt).hom(faj, jp).size());
    }
  }
  return count;
}

}  // namespace

TEST_CASE("catalog categories validate") {
  for (const auto& c : full_catalog()) {
    CHECK_NOTHROW(c.validate());
    CHECK(c.n_objects <= 6);
    CHECK(c.n_mors() <= 20);
  }
}

TEST_CASE("oplax colimit of the constant terminal family is the index") {
  for (const auto& I : index_catalog()) {
    auto col = oplax_colim(I, CatFamily::constant(I, terminal_cat()));
    auto iso = cat_iso(col.total, I);
    INFO(I.name);
    CHECK(iso.has_value());
  }
}

TEST_CASE("oplax colimit over the terminal index is the fiber") {
  for (const auto& J : fiber_catalog()) {
    auto col = oplax_colim(terminal_cat(), CatFamily::constant(terminal_cat(), J));
    INFO(J.name);
    CHECK(cat_iso(col.total, J).has_value());
  }
}

TEST_CASE("discrete index with discrete fibers gives the coproduct") {
  CatFamily f;
  f.index = discrete_cat(2);
  f.fibers = {discrete_cat(2), discrete_cat(3)};
  f.actions = {FinFunctor::identity(discrete_cat(2)), FinFunctor::identity(discrete_cat(3))};
  auto col = oplax_colim(f.index, f);
  CHECK(col.total.n_objects == 5);
  CHECK(cat_iso(col.total, discrete_cat(5)).has_value());
}

TEST_CASE("oplax colimit sizes match the direct enumeration oracle") {
  CatAdder a;
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    FinCat I = a.gen_elem(rng);
    CatFamily f = a.gen_family(rng, I);
    auto col = oplax_colim(I, f);
    int objs = 0;
    for (const auto& fib : f.fibers) objs += fib.n_objects;
    CHECK(col.total.n_objects == objs);
    CHECK(col.total.n_mors() == oplax_mor_count_oracle(I, f));
    // the universal-property data validates
    for (const auto& inj : col.injections) CHECK_NOTHROW(inj.validate());
    for (const auto& nt : col.connecting) CHECK_NOTHROW(nt.validate());
  }
}

TEST_CASE("lax colimit of the constant terminal family is the index") {
  for (const auto& I : index_catalog()) {
    FinCat lax = lax_colim(I, CatFamily::constant(op_cat(I), terminal_cat()));
    INFO(I.name);
    CHECK(cat_iso(lax, I).has_value());
  }
}

TEST_CASE("lax equals oplax on discrete indexes") {
  CatFamily f;
  f.index = discrete_cat(3);
  f.fibers = {arrow_cat(), discrete_cat(2), terminal_cat()};
  f.actions = {FinFunctor::identity(arrow_cat()), FinFunctor::identity(discrete_cat(2)),
               FinFunctor::identity(terminal_cat())};
  FinCat via_lax = lax_colim(discrete_cat(3), f);
  FinCat via_oplax = oplax_colim(discrete_cat(3), f).total;
  CHECK(cat_iso(via_lax, via_oplax).has_value());
}

TEST_CASE("lax reverses the fiber direction relative to oplax") {
  // I = arrow, fibers = arrow, connecting functor constant at the top object
  FinCat A = arrow_cat();
  auto functors = all_functors(A, A);
  const FinFunctor* const_top = nullptr;
  for (const auto& fn : functors)
    if (fn.obj_map == std::vector<int>{1, 1}) const_top = &fn;
  REQUIRE(const_top != nullptr);

  CatFamily cov;
  cov.index = A;
  cov.fibers = {A, A};
  cov.actions = {FinFunctor::identity(A), FinFunctor::identity(A), *const_top};
  FinCat via_oplax = oplax_colim(A, cov).total;

  CatFamily contra;  // family over op(arrow)
  contra.index = op_cat(A);
  contra.fibers = {A, A};
  contra.actions = {FinFunctor::identity(A), FinFunctor::identity(A), *const_top};
  FinCat via_lax = lax_colim(A, contra);

  CHECK(via_oplax.n_objects == via_lax.n_objects);
  // cross-fiber hom counts flip: collect out-degrees of the fiber-0 objects
  auto out_degrees = [](const FinCat& c) {
    std::vector<int> d(static_cast<std::size_t>(c.n_objects), 0);
    for (const auto& m : c.mors)
      if (m.src != m.tgt) ++d[static_cast<std::size_t>(m.src)];
    std::sort(d.begin(), d.end());
    return d;
  };
  CHECK(out_degrees(via_oplax) != out_degrees(via_lax));
}

TEST_CASE("cat_iso finds witnesses and refuses non-isomorphic pairs") {
  FinCat A = arrow_cat();
  CHECK(cat_iso(A, A).has_value());

  // permuted presentation of the arrow category
  FinCatBuilder b("worra", 2);
  b.add_mor(1, 0);
  FinCat A2 = b.finish();
  CHECK(cat_iso(A, A2).has_value());

  CHECK_FALSE(cat_iso(discrete_cat(2), A).has_value());
  CHECK_FALSE(cat_iso(parallel_pair_cat(), A).has_value());

  // equivalence relation spot checks on the catalog
  auto cats = full_catalog();
  for (const auto& c : cats) CHECK(cat_iso(c, c).has_value());
  for (const auto& c : cats)
    for (const auto& d : cats) CHECK(cat_iso(c, d).has_value() == cat_iso(d, c).has_value());
}

TEST_CASE("category JSON round trips bit-exactly") {
  for (const auto& c : full_catalog()) {
    nlohmann::json j = cat_to_json(c);
    FinCat back = cat_from_json(j);
    CHECK(back == c);
    CHECK(cat_to_json(back) == j);
  }
}

TEST_CASE("core axiom suite: cat (equality up to isomorphism)") {
  CatAdder a;
  CHECK(check_right_unit(a, 200, 801).passed());
  CHECK(check_left_unit(a, 120, 802).passed());
  CHECK(check_sum_assoc(a, 120, 803).passed());
  CHECK(check_flatten_assoc(a, 200, 32, 804).passed());
  CHECK(check_fubini(a, 60, 805).passed());
  CHECK(check_zero(a, 100, 806).passed());
  CHECK(check_naturality(a, {0, 1}, 30, 807).passed());
}

TEST_CASE("derived product on cat is the cartesian product up to iso") {
  CatAdder a;
  for (const auto& I : {terminal_cat(), discrete_cat(2), arrow_cat()})
    for (const auto& J : {arrow_cat(), chain3_cat()}) {
      auto p = product(a, I, J);
      INFO(I.name, " x ", J.name);
      CHECK(cat_iso(p, prod_cat(I, J)).has_value());
    }
}

TEST_CASE("fully discrete inputs reduce to the natural numbers") {
  // |Sum_Cat F| = Sum_N |F| when everything is discrete
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(4));
    CatFamily f;
    f.index = discrete_cat(n);
    std::vector<std::int64_t> sizes;
    for (int i = 0; i < n; ++i) {
      int s = static_cast<int>(rng.next_below(4));
      f.fibers.push_back(discrete_cat(s));
      f.actions.push_back(FinFunctor::identity(f.fibers.back()));
      sizes.push_back(s);
    }
    auto col = oplax_colim(f.index, f);
    CHECK(static_cast<std::int64_t>(col.total.n_objects) == nat_sum(n, sizes));
    CHECK(col.total.n_mors() == col.total.n_objects);  // only identities
  }
}

TEST_CASE("finset colimits") {
  // parallel pair with two maps {1,2} → {1} collapses to a point
  SetFamily f;
  f.index = parallel_pair_cat();
  f.sizes = {2, 1};
  f.fns = {{0, 1}, {0}, {0, 0}, {0, 0}};
  f.validate();
  auto col = finset_colim(f.index, f);
  CHECK(col.size == 1);

  // discrete index: disjoint union
  SetFamily d;
  d.index = discrete_cat(3);
  d.sizes = {2, 0, 3};
  d.fns = {{0, 1}, {}, {0, 1, 2}};
  CHECK(finset_colim(d.index, d).size == 5);

  // an idempotent endo collapsing {1,2} to {1}
  FinCatBuilder b("idem", 1);
  int tau = b.add_mor(0, 0);
  FinCat idem = b.finish({{tau, tau, tau}});
  SetFamily e;
  e.index = idem;
  e.sizes = {2};
  e.fns = {{0, 1}, {0, 0}};
  CHECK(finset_colim(idem, e).size == 1);
}

TEST_CASE("finset is a cat-module: unit and nested-vs-iterated colimits") {
  auto r = cat_module_suite(60, 901);
  CHECK(r.passed());
  CHECK(r.cases_run >= 30);
}

TEST_CASE("aggregated cat adder suite") {
  auto r = cat_adder_suite(60, 903);
  CHECK(r.passed());
  CHECK(r.cases_run >= 300);
}

TEST_CASE("cocontinuous functors pass the linearity check, ⊔1 does not") {
  CHECK(cat_linear_check(SetEndofunctor::identity(), 60, 911).passed());
  CHECK(cat_linear_check(SetEndofunctor::times_two(), 60, 912).passed());
  auto r = cat_linear_check(SetEndofunctor::plus_one(), 60, 913);
  CHECK_FALSE(r.passed());
}

TEST_CASE("the arrow-category cocone construction detects ⊔1 too") {
  // diagram over I = disc2 extended by its colimiting cocone as an arrow leg:
  // a diagram g over I × arrow whose u=1 slice is the constant colimit
  FinCat I = discrete_cat(2);
  SetFamily G;
  G.index = I;
  G.sizes = {2, 1};
  G.fns = {{0, 1}, {0}};
  auto colG = finset_colim(I, G);
  REQUIRE(colG.size == 3);

  FinCat IU = prod_cat(I, arrow_cat());
  SetFamily g;  // object (i, u) has index i * 2 + u in prod_cat
  g.index = IU;
  g.sizes = {G.size(0), colG.size, G.size(1), colG.size};
  g.fns.assign(static_cast<std::size_t>(IU.n_mors()), {});
  for (int m = 0; m < IU.n_mors(); ++m) {
    const auto& mor = IU.mors[static_cast<std::size_t>(m)];
    int i = mor.src / 2, u = mor.src % 2, u2 = mor.tgt % 2;
    if (mor.src == mor.tgt) {
      std::vector<int> id(static_cast<std::size_t>(g.sizes[static_cast<std::size_t>(mor.src)]));
      std::iota(id.begin(), id.end(), 0);
      g.fns[static_cast<std::size_t>(m)] = id;
    } else if (u == 0 && u2 == 1) {
      g.fns[static_cast<std::size_t>(m)] = colG.cocone[static_cast<std::size_t>(i)];
    }
  }
  g.validate();

  // colim(T∘g) must be T(colim g) when T sends cocones to cocones
  auto nested_vs_outer = [&](const SetEndofunctor& T) {
    SetFamily Tg;
    Tg.index = IU;
    for (int i = 0; i < IU.n_objects; ++i) Tg.sizes.push_back(T.size_map(g.size(i)));
    for (int m = 0; m < IU.n_mors(); ++m) {
      const auto& mor = IU.mors[static_cast<std::size_t>(m)];
      Tg.fns.push_back(T.fn_map(g.fn(m), g.size(mor.src), g.size(mor.tgt)));
    }
    Tg.validate();
    return std::pair{finset_colim(IU, Tg).size, T.size_map(finset_colim(IU, g).size)};
  };
  auto good = nested_vs_outer(SetEndofunctor::times_two());
  CHECK(good.first == good.second);
  auto bad = nested_vs_outer(SetEndofunctor::plus_one());
  CHECK(bad.first != bad.second);
}
