#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "depsum/fincat.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// ---------------------------------------------------------------------------
// catalog of small categories used by generators and fixtures
// ---------------------------------------------------------------------------
inline FinCat terminal_cat() { return FinCatBuilder("1", 1).finish(); }

inline FinCat discrete_cat(int n) {
  return FinCatBuilder("disc" + std::to_string(n), n).finish();
}

inline FinCat arrow_cat() {
  FinCatBuilder b("arrow", 2);
  b.add_mor(0, 1);
  return b.finish();
}

inline FinCat parallel_pair_cat() {
  FinCatBuilder b("pair", 2);
  b.add_mor(0, 1);
  b.add_mor(0, 1);
  return b.finish();
}

inline FinCat span_cat() {
  FinCatBuilder b("span", 3);
  b.add_mor(0, 1);
  b.add_mor(0, 2);
  return b.finish();
}

inline FinCat chain3_cat() {
  FinCatBuilder b("chain3", 3);
  int f = b.add_mor(0, 1);
  int g = b.add_mor(1, 2);
  int gf = b.add_mor(0, 2);
  return b.finish({{g, f, gf}});
}

inline FinCat walking_iso_cat() {
  FinCatBuilder b("iso", 2);
  int f = b.add_mor(0, 1);
  int g = b.add_mor(1, 0);
  return b.finish({{g, f, b.identity_of(0)}, {f, g, b.identity_of(1)}});
}

inline FinCat z2_monoid_cat() {
  FinCatBuilder b("Z2", 1);
  int s = b.add_mor(0, 0);
  return b.finish({{s, s, b.identity_of(0)}});
}

inline std::vector<FinCat> index_catalog() {
  return {terminal_cat(), discrete_cat(2), discrete_cat(3), arrow_cat(),
          parallel_pair_cat(), span_cat(), chain3_cat()};
}
inline std::vector<FinCat> fiber_catalog() {
  return {terminal_cat(), discrete_cat(2), arrow_cat(), walking_iso_cat(), z2_monoid_cat()};
}
inline std::vector<FinCat> full_catalog() {
  auto v = index_catalog();
  v.push_back(walking_iso_cat());
  v.push_back(z2_monoid_cat());
  return v;
}

// ---------------------------------------------------------------------------
// strict functors into Cat: one fiber per object, one functor per morphism
// ---------------------------------------------------------------------------
struct CatFamily {
  FinCat index;
  std::vector<FinCat> fibers;       // per object of index
  std::vector<FinFunctor> actions;  // per morphism of index

  const FinCat& fiber(int i) const { return fibers[static_cast<std::size_t>(i)]; }
  const FinFunctor& action(int a) const { return actions[static_cast<std::size_t>(a)]; }

  void validate() const {
    for (int a = 0; a < index.n_mors(); ++a) {
      const auto& m = index.mors[static_cast<std::size_t>(a)];
      const FinFunctor& fn = action(a);
      if (!(fn.dom == fiber(m.src)) || !(fn.cod == fiber(m.tgt)))
        throw std::logic_error("cat family: action endpoints");
      fn.validate();
    }
    for (int x = 0; x < index.n_objects; ++x) {
      const FinFunctor& idfn = action(index.identity[static_cast<std::size_t>(x)]);
      FinFunctor expect = FinFunctor::identity(fiber(x));
      if (idfn.obj_map != expect.obj_map || idfn.mor_map != expect.mor_map)
        throw std::logic_error("cat family: identity action");
    }
    for (int f = 0; f < index.n_mors(); ++f)
      for (int g = 0; g < index.n_mors(); ++g) {
        int gf = index.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
        if (gf < 0) continue;
        FinFunctor comp = FinFunctor::compose(action(g), action(f));
        if (comp.obj_map != action(gf).obj_map || comp.mor_map != action(gf).mor_map)
          throw std::logic_error("cat family: strict functoriality");
      }
  }

  static CatFamily constant(const FinCat& index, const FinCat& fiber) {
    CatFamily f;
    f.index = index;
    f.fibers.assign(static_cast<std::size_t>(index.n_objects), fiber);
    FinFunctor id = FinFunctor::identity(fiber);
    f.actions.assign(static_cast<std::size_t>(index.n_mors()), id);
    return f;
  }
};

// ---------------------------------------------------------------------------
// the explicit oplax colimit: objects (i, j), morphisms (α, β : F(α)(j) → j')
// ---------------------------------------------------------------------------
struct OplaxColimit {
  FinCat total;
  std::vector<std::pair<int, int>> obj_of;          // total object → (i, j)
  std::map<std::pair<int, int>, int> obj_index;     // (i, j) → total object
  std::vector<std::tuple<int, int, int>> mor_of;    // total morphism → (α, j, β)
  std::map<std::tuple<int, int, int>, int> mor_index;
  std::vector<FinFunctor> injections;               // ι_i : F(i) → total
  std::vector<FinNatTrans> connecting;              // ι_α : ι_i → ι_{i'} ∘ F(α)
};

inline OplaxColimit oplax_colim(const FinCat& index, const CatFamily& fam) {
  fam.validate();
  OplaxColimit out;
  FinCat& t = out.total;
  t.name = "oplax(" + index.name + ")";
  for (int i = 0; i < index.n_objects; ++i)
    for (int j = 0; j < fam.fiber(i).n_objects; ++j) {
      out.obj_index[{i, j}] = t.n_objects;
      out.obj_of.push_back({i, j});
      ++t.n_objects;
    }
  // morphisms: α : i → i' in the index, j in F(i), β : F(α)(j) → j' in F(i')
  for (int a = 0; a < index.n_mors(); ++a) {
    const auto& am = index.mors[static_cast<std::size_t>(a)];
    const FinFunctor& fa = fam.action(a);
    for (int j = 0; j < fam.fiber(am.src).n_objects; ++j) {
      int faj = fa.on_obj(j);
      for (int b = 0; b < fam.fiber(am.tgt).n_mors(); ++b) {
        const auto& bm = fam.fiber(am.tgt).mors[static_cast<std::size_t>(b)];
        if (bm.src != faj) continue;
        out.mor_index[{a, j, b}] = t.n_mors();
        out.mor_of.push_back({a, j, b});
        t.mors.push_back({out.obj_index.at({am.src, j}), out.obj_index.at({am.tgt, bm.tgt})});
      }
    }
  }
  t.check_caps(true);
  // identities
  for (int o = 0; o < t.n_objects; ++o) {
    auto [i, j] = out.obj_of[static_cast<std::size_t>(o)];
    t.identity.push_back(out.mor_index.at(
        {index.identity[static_cast<std::size_t>(i)], j,
         fam.fiber(i).identity[static_cast<std::size_t>(j)]}));
  }
  // composition: (α', β') ∘ (α, β) = (α'∘α, β' ∘ F(α')(β))
  int m = t.n_mors();
  t.comp.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int f = 0; f < m; ++f) {
    auto [a1, j1, b1] = out.mor_of[static_cast<std::size_t>(f)];
    const auto& a1m = index.mors[static_cast<std::size_t>(a1)];
    int f_tgt_j = fam.fiber(a1m.tgt).mors[static_cast<std::size_t>(b1)].tgt;
    for (int g = 0; g < m; ++g) {
      auto [a2, j2, b2] = out.mor_of[static_cast<std::size_t>(g)];
      int aa = index.comp[static_cast<std::size_t>(a2)][static_cast<std::size_t>(a1)];
      if (aa < 0) continue;
      if (j2 != f_tgt_j) continue;
      const FinFunctor& fa2 = fam.action(a2);
      int beta = fam.fiber(index.mors[static_cast<std::size_t>(a2)].tgt)
                     .compose(b2, fa2.on_mor(b1));
      t.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] =
          out.mor_index.at({aa, j1, beta});
    }
  }
  t.validate();
  // universal-property data
  for (int i = 0; i < index.n_objects; ++i) {
    FinFunctor inj{fam.fiber(i), t, {}, {}};
    for (int j = 0; j < fam.fiber(i).n_objects; ++j) inj.obj_map.push_back(out.obj_index.at({i, j}));
    for (int b = 0; b < fam.fiber(i).n_mors(); ++b)
      inj.mor_map.push_back(out.mor_index.at(
          {index.identity[static_cast<std::size_t>(i)],
           fam.fiber(i).mors[static_cast<std::size_t>(b)].src, b}));
    inj.validate();
    out.injections.push_back(inj);
  }
  for (int a = 0; a < index.n_mors(); ++a) {
    const auto& am = index.mors[static_cast<std::size_t>(a)];
    FinNatTrans nt{out.injections[static_cast<std::size_t>(am.src)],
                   FinFunctor::compose(out.injections[static_cast<std::size_t>(am.tgt)],
                                       fam.action(a)),
                   {}};
    for (int j = 0; j < fam.fiber(am.src).n_objects; ++j)
      nt.components.push_back(out.mor_index.at(
          {a, j, fam.fiber(am.tgt).identity[static_cast<std::size_t>(fam.action(a).on_obj(j))]}));
    nt.validate();
    out.connecting.push_back(nt);
  }
  return out;
}

// lax colimit / Grothendieck construction: op of the oplax colimit of the
// op'd family over the op'd index
inline FinCat lax_colim(const FinCat& index, const CatFamily& fam_on_op_index) {
  CatFamily opped;
  opped.index = op_cat(index);
  for (const auto& f : fam_on_op_index.fibers) opped.fibers.push_back(op_cat(f));
  for (const auto& a : fam_on_op_index.actions) opped.actions.push_back(a.op());
  return op_cat(oplax_colim(opped.index, opped).total);
}

// ---------------------------------------------------------------------------
// the Cat dependent adder, with cat_iso as equality
// ---------------------------------------------------------------------------
class CatAdder {
public:
  using Elem = FinCat;
  using Point = int;  // object index of the fiber category
  using Fiber = FinCat;
  using Family = CatFamily;
  struct Family2 {
    FinCat left, right;
    CatFamily on_product;  // over prod_cat(left, right)
  };

  std::string name() const { return "cat"; }
  bool commutative() const { return true; }
  Elem unit() const { return terminal_cat(); }
  std::optional<Elem> zero() const { return discrete_cat(0); }

  Fiber fiber_of(const Elem& x) const { return x; }
  Family const_family(const Fiber& fib, const Elem& c) const {
    return CatFamily::constant(fib, c);
  }
  Elem eval(const Family& f, const Point& i) const { return f.fiber(i); }
  Elem sum(const Elem& x, const Family& f) const {
    (void)x;
    return oplax_colim(f.index, f).total;
  }
  Point flatten(const Elem& x, const Family& f, const Point& i, const Point& j) const {
    (void)x;
    OplaxColimit col = oplax_colim(f.index, f);
    return col.obj_index.at({i, j});
  }

  // (g ∘ f^♭)|_i : a family over F(i) with fibers G(i,j) and the actions of g
  // along the injected morphisms (id_i, β)
  Family inner_family(const Elem& x, const Family& f, const Family& g, const Point& i) const {
    OplaxColimit col = oplax_colim(f.index, f);
    Family out;
    out.index = f.fiber(i);
    for (int j = 0; j < out.index.n_objects; ++j)
      out.fibers.push_back(g.fiber(col.obj_index.at({i, j})));
    int id_i = f.index.identity[static_cast<std::size_t>(i)];
    for (int b = 0; b < out.index.n_mors(); ++b) {
      int jsrc = out.index.mors[static_cast<std::size_t>(b)].src;
      out.actions.push_back(g.action(col.mor_index.at({id_i, jsrc, b})));
    }
    (void)x;
    return out;
  }

  // f ⊠ g: fiber at i is the oplax colimit of (g∘f^♭)|_i; the action along
  // α : i → i' sends (j, k) to (F(α)j, G(α, id)(k))
  Family boxtimes(const Elem& x, const Family& f, const Family& g) const {
    OplaxColimit col = oplax_colim(f.index, f);
    Family out;
    out.index = f.index;
    std::vector<OplaxColimit> inner_cols;
    for (int i = 0; i < f.index.n_objects; ++i) {
      Family inner = inner_family(x, f, g, i);
      inner_cols.push_back(oplax_colim(inner.index, inner));
      out.fibers.push_back(inner_cols.back().total);
    }
    for (int a = 0; a < f.index.n_mors(); ++a) {
      const auto& am = f.index.mors[static_cast<std::size_t>(a)];
      const FinFunctor& fa = f.action(a);
      const OplaxColimit& src_col = inner_cols[static_cast<std::size_t>(am.src)];
      const OplaxColimit& tgt_col = inner_cols[static_cast<std::size_t>(am.tgt)];
      FinFunctor act{src_col.total, tgt_col.total, {}, {}};
      // objects (j, k) ↦ (F(α)j, G(α, id_{F(α)j})(k))
      for (int o = 0; o < src_col.total.n_objects; ++o) {
        auto [j, k] = src_col.obj_of[static_cast<std::size_t>(o)];
        int faj = fa.on_obj(j);
        int colmor = col.mor_index.at(
            {a, j, f.fiber(am.tgt).identity[static_cast<std::size_t>(faj)]});
        act.obj_map.push_back(tgt_col.obj_index.at({faj, g.action(colmor).on_obj(k)}));
      }
      // morphisms (β, γ) ↦ (F(α)β, G(α, id)(γ)), with the source germ moved
      // along G(α, id_{F(α) src(β)})
      for (int mi = 0; mi < src_col.total.n_mors(); ++mi) {
        auto [b, k, gma] = src_col.mor_of[static_cast<std::size_t>(mi)];
        const auto& bm = f.fiber(am.src).mors[static_cast<std::size_t>(b)];
        int fab = fa.on_mor(b);
        int fab_src = fa.on_obj(bm.src);
        int fab_tgt = fa.on_obj(bm.tgt);
        int colmor_src = col.mor_index.at(
            {a, bm.src, f.fiber(am.tgt).identity[static_cast<std::size_t>(fab_src)]});
        int colmor_tgt = col.mor_index.at(
            {a, bm.tgt, f.fiber(am.tgt).identity[static_cast<std::size_t>(fab_tgt)]});
        act.mor_map.push_back(tgt_col.mor_index.at(
            {fab, g.action(colmor_src).on_obj(k), g.action(colmor_tgt).on_mor(gma)}));
      }
      act.validate();
      out.actions.push_back(act);
    }
    out.validate();
    return out;
  }

  bool equal_elem(const Elem& a, const Elem& b) const { return cat_iso(a, b).has_value(); }
  bool equal_point(const Point& a, const Point& b) const { return a == b; }

  Elem gen_elem(Rng& rng) const {
    auto cats = index_catalog();
    return cats[rng.next_below(cats.size())];
  }

  // random strict family: fibers from the catalog, actions rejection-sampled
  // until strict functoriality holds; large derived indexes fall back to
  // constant families, which are strict for free
  Family gen_family(Rng& rng, const Fiber& fib) const {
    auto fibers = fiber_catalog();
    if (fib.n_mors() > CatLimits::get().catalog_morphisms)
      return CatFamily::constant(fib, fibers[rng.next_below(3)]);
    for (int attempt = 0; attempt < 64; ++attempt) {
      Family f;
      f.index = fib;
      for (int i = 0; i < fib.n_objects; ++i)
        f.fibers.push_back(fibers[rng.next_below(fibers.size())]);
      bool ok = true;
      for (int a = 0; a < fib.n_mors() && ok; ++a) {
        const auto& am = fib.mors[static_cast<std::size_t>(a)];
        bool is_identity = am.src == am.tgt && a == fib.identity[static_cast<std::size_t>(am.src)];
        if (is_identity) {
          f.actions.push_back(FinFunctor::identity(f.fiber(am.src)));
          continue;
        }
        auto candidates = all_functors(f.fiber(am.src), f.fiber(am.tgt), 256);
        if (candidates.empty()) {
          ok = false;
          break;
        }
        f.actions.push_back(candidates[rng.next_below(candidates.size())]);
      }
      if (!ok) continue;
      try {
        f.validate();
        return f;
      } catch (const std::logic_error&) {
      }
    }
    return CatFamily::constant(fib, fibers[rng.next_below(2)]);
  }

  Family2 gen_family2(Rng& rng, const Fiber& fx, const Fiber& fy) const {
    // external products A(i) × B(j) keep strictness easy to guarantee
    Family a = gen_family(rng, fx);
    Family b = gen_family(rng, fy);
    Family2 f2;
    f2.left = fx;
    f2.right = fy;
    f2.on_product.index = prod_cat(fx, fy);
    for (int i = 0; i < fx.n_objects; ++i)
      for (int j = 0; j < fy.n_objects; ++j)
        f2.on_product.fibers.push_back(prod_cat(a.fiber(i), b.fiber(j)));
    for (int ma = 0; ma < fx.n_mors(); ++ma)
      for (int mb = 0; mb < fy.n_mors(); ++mb) {
        const FinFunctor& fa = a.action(ma);
        const FinFunctor& fb = b.action(mb);
        const auto& am = fx.mors[static_cast<std::size_t>(ma)];
        const auto& bm = fy.mors[static_cast<std::size_t>(mb)];
        FinFunctor prod{prod_cat(a.fiber(am.src), b.fiber(bm.src)),
                        prod_cat(a.fiber(am.tgt), b.fiber(bm.tgt)),
                        {},
                        {}};
        int bsrc_objs = b.fiber(bm.src).n_objects;
        int btgt_objs = b.fiber(bm.tgt).n_objects;
        for (int o = 0; o < prod.dom.n_objects; ++o) {
          int oa = o / bsrc_objs, ob = o % bsrc_objs;
          prod.obj_map.push_back(fa.on_obj(oa) * btgt_objs + fb.on_obj(ob));
        }
        int bsrc_mors = b.fiber(bm.src).n_mors();
        int btgt_mors = b.fiber(bm.tgt).n_mors();
        for (int m = 0; m < prod.dom.n_mors(); ++m) {
          int mfa = m / bsrc_mors, mfb = m % bsrc_mors;
          prod.mor_map.push_back(fa.on_mor(mfa) * btgt_mors + fb.on_mor(mfb));
        }
        prod.validate();
        f2.on_product.actions.push_back(prod);
      }
    f2.on_product.validate();
    return f2;
  }

  Family2 swap2(const Family2& f2) const {
    Family2 r;
    r.left = f2.right;
    r.right = f2.left;
    r.on_product.index = prod_cat(f2.right, f2.left);
    int lo = f2.left.n_objects, ro = f2.right.n_objects;
    for (int j = 0; j < ro; ++j)
      for (int i = 0; i < lo; ++i)
        r.on_product.fibers.push_back(f2.on_product.fiber(i * ro + j));
    int lm = f2.left.n_mors(), rm = f2.right.n_mors();
    for (int mb = 0; mb < rm; ++mb)
      for (int ma = 0; ma < lm; ++ma)
        r.on_product.actions.push_back(f2.on_product.action(ma * rm + mb));
    r.on_product.validate();
    return r;
  }

  // j ↦ oplax colimit over the first index of f2(−, j), with the induced
  // action functors
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    const FinCat& I = f2.left;
    const FinCat& J = f2.right;
    (void)x;
    Family out;
    out.index = J;
    std::vector<OplaxColimit> cols;
    for (int j = 0; j < J.n_objects; ++j) {
      Family slice;
      slice.index = I;
      for (int i = 0; i < I.n_objects; ++i)
        slice.fibers.push_back(f2.on_product.fiber(i * J.n_objects + j));
      for (int ma = 0; ma < I.n_mors(); ++ma)
        slice.actions.push_back(
            f2.on_product.action(ma * J.n_mors() + J.identity[static_cast<std::size_t>(j)]));
      slice.validate();
      cols.push_back(oplax_colim(I, slice));
      out.fibers.push_back(cols.back().total);
    }
    for (int mb = 0; mb < J.n_mors(); ++mb) {
      const auto& bm = J.mors[static_cast<std::size_t>(mb)];
      const OplaxColimit& src_col = cols[static_cast<std::size_t>(bm.src)];
      const OplaxColimit& tgt_col = cols[static_cast<std::size_t>(bm.tgt)];
      FinFunctor act{src_col.total, tgt_col.total, {}, {}};
      for (int o = 0; o < src_col.total.n_objects; ++o) {
        auto [i, k] = src_col.obj_of[static_cast<std::size_t>(o)];
        const FinFunctor& slide =
            f2.on_product.action(I.identity[static_cast<std::size_t>(i)] * J.n_mors() + mb);
        act.obj_map.push_back(tgt_col.obj_index.at({i, slide.on_obj(k)}));
      }
      for (int m = 0; m < src_col.total.n_mors(); ++m) {
        auto [ma, k, gm] = src_col.mor_of[static_cast<std::size_t>(m)];
        const auto& am = I.mors[static_cast<std::size_t>(ma)];
        const FinFunctor& slide_src =
            f2.on_product.action(I.identity[static_cast<std::size_t>(am.src)] * J.n_mors() + mb);
        const FinFunctor& slide_tgt =
            f2.on_product.action(I.identity[static_cast<std::size_t>(am.tgt)] * J.n_mors() + mb);
        act.mor_map.push_back(
            tgt_col.mor_index.at({ma, slide_src.on_obj(k), slide_tgt.on_mor(gm)}));
      }
      act.validate();
      out.actions.push_back(act);
    }
    out.validate();
    return out;
  }

  std::vector<Point> sample_points(const Fiber& fib, Rng&) const {
    std::vector<Point> ps;
    for (int i = 0; i < fib.n_objects; ++i) ps.push_back(i);
    return ps;
  }

  // Flatten associativity through the explicit reassociation functor
  // Φ : oplax(oplax(x,f), g) → oplax(x, f⊠g), ((i,j),k) ↦ (i,(j,k)).
  void custom_flatten_assoc(Rng& rng, CheckResult& out) const {
    Elem x = gen_elem(rng);
    Family f = gen_family(rng, x);
    OplaxColimit colf = oplax_colim(x, f);
    Family g = gen_family(rng, colf.total);
    std::uint64_t case_idx = out.cases_run;
    ++out.cases_run;
    try {
      Family fg = boxtimes(x, f, g);
      OplaxColimit nested = oplax_colim(colf.total, g);       // ⟦Sum^{Sum^x f} g⟧
      OplaxColimit assoc = oplax_colim(x, fg);                // ⟦Sum^x f⊠g⟧
      std::vector<OplaxColimit> inner_cols;
      for (int i = 0; i < x.n_objects; ++i) {
        Family inner = inner_family(x, f, g, i);
        inner_cols.push_back(oplax_colim(inner.index, inner));
      }
      // build Φ on objects and morphisms, then validate it is an isomorphism
      FinFunctor phi{nested.total, assoc.total, {}, {}};
      for (int o = 0; o < nested.total.n_objects; ++o) {
        auto [colf_obj, k] = nested.obj_of[static_cast<std::size_t>(o)];
        auto [i, j] = colf.obj_of[static_cast<std::size_t>(colf_obj)];
        int inner_obj = inner_cols[static_cast<std::size_t>(i)].obj_index.at({j, k});
        phi.obj_map.push_back(assoc.obj_index.at({i, inner_obj}));
      }
      for (int m = 0; m < nested.total.n_mors(); ++m) {
        auto [colf_mor, k, gamma] = nested.mor_of[static_cast<std::size_t>(m)];
        auto [alpha, j, beta] = colf.mor_of[static_cast<std::size_t>(colf_mor)];
        int i_src = x.mors[static_cast<std::size_t>(alpha)].src;
        int i_tgt = x.mors[static_cast<std::size_t>(alpha)].tgt;
        // δ = (β, γ) based at the relocated germ G(α, id_{F(α)j})(k)
        int faj = f.action(alpha).on_obj(j);
        int colmor_id = colf.mor_index.at(
            {alpha, j, f.fiber(i_tgt).identity[static_cast<std::size_t>(faj)]});
        int k_moved = g.action(colmor_id).on_obj(k);
        int delta =
            inner_cols[static_cast<std::size_t>(i_tgt)].mor_index.at({beta, k_moved, gamma});
        phi.mor_map.push_back(assoc.mor_index.at(
            {alpha, inner_cols[static_cast<std::size_t>(i_src)].obj_index.at({j, k}), delta}));
      }
      phi.validate();
      // bijectivity
      std::vector<bool> obj_hit(static_cast<std::size_t>(assoc.total.n_objects), false);
      for (int o : phi.obj_map) obj_hit[static_cast<std::size_t>(o)] = true;
      std::vector<bool> mor_hit(static_cast<std::size_t>(assoc.total.n_mors()), false);
      for (int m : phi.mor_map) mor_hit[static_cast<std::size_t>(m)] = true;
      bool bij = nested.total.n_objects == assoc.total.n_objects &&
                 nested.total.n_mors() == assoc.total.n_mors();
      for (bool h : obj_hit) bij = bij && h;
      for (bool h : mor_hit) bij = bij && h;
      if (!bij) {
        out.record(case_idx, "x=" + x.name, "reassociation not bijective", "");
        return;
      }
      // the two flatten routes agree through Φ on every nested point
      for (int o = 0; o < nested.total.n_objects; ++o) {
        auto [colf_obj, k] = nested.obj_of[static_cast<std::size_t>(o)];
        auto [i, j] = colf.obj_of[static_cast<std::size_t>(colf_obj)];
        int route1 = phi.on_obj(o);  // Φ(g^♭(f^♭(i,j), k))
        int inner_pt = inner_cols[static_cast<std::size_t>(i)].obj_index.at({j, k});
        int route2 = assoc.obj_index.at({i, inner_pt});
        if (route1 != route2) {
          out.record(case_idx, "x=" + x.name + " at ((" + std::to_string(i) + "," +
                                   std::to_string(j) + ")," + std::to_string(k) + ")",
                     std::to_string(route1), std::to_string(route2));
          return;
        }
      }
    } catch (const CatCapExceeded&) {
      ++out.cases_skipped;
      --out.cases_run;
    }
  }

  std::string show_elem(const Elem& x) const {
    return x.name + "(" + std::to_string(x.n_objects) + "o," + std::to_string(x.n_mors()) + "m)";
  }
  std::string show_point(const Point& p) const { return std::to_string(p); }
  std::string show_family(const Family& f) const {
    std::string s = "family[";
    for (std::size_t i = 0; i < f.fibers.size(); ++i)
      s += (i ? "," : "") + f.fibers[i].name;
    return s + "]";
  }
  std::string show_family2(const Family2& f2) const {
    return "bifamily over " + f2.left.name + "×" + f2.right.name;
  }
};

}  // namespace depsum
