#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "depsum/adder.hpp"
#include "depsum/cat_adder.hpp"
#include "depsum/check.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// One aggregated run of the Cat adder's axioms — Right/Left Unit, Sum
// Associativity, Fubini, zero, and the reassociation form of Flatten
// Associativity — with cat_iso as the equality.
inline CheckResult cat_adder_suite(std::uint64_t cases, std::uint64_t seed) {
  CatAdder cat;
  CheckResult out;
  out.axiom = "cat-adder-suite";
  for (CheckResult part :
       {check_right_unit(cat, cases, seed + 1), check_left_unit(cat, cases, seed + 2),
        check_sum_assoc(cat, cases, seed + 3), check_flatten_assoc(cat, cases, 32, seed + 4),
        check_fubini(cat, cases, seed + 5), check_zero(cat, cases, seed + 6)}) {
    out.cases_run += part.cases_run;
    out.cases_skipped += part.cases_skipped;
    for (auto& f : part.failures) {
      f.inputs = part.axiom + ": " + f.inputs;
      out.failures.push_back(std::move(f));
    }
  }
  return out;
}

// Functor from a finite index category into finite sets: per-object sizes and
// per-morphism functions, validated for functoriality.
struct SetFamily {
  FinCat index;
  std::vector<int> sizes;                 // per object
  std::vector<std::vector<int>> fns;      // per morphism: element maps

  int size(int i) const { return sizes[static_cast<std::size_t>(i)]; }
  const std::vector<int>& fn(int m) const { return fns[static_cast<std::size_t>(m)]; }

  void validate() const {
    for (int m = 0; m < index.n_mors(); ++m) {
      const auto& mor = index.mors[static_cast<std::size_t>(m)];
      if (static_cast<int>(fn(m).size()) != size(mor.src))
        throw std::logic_error("set family: function arity");
      for (int v : fn(m))
        if (v < 0 || v >= size(mor.tgt)) throw std::logic_error("set family: function range");
    }
    for (int x = 0; x < index.n_objects; ++x) {
      const auto& idf = fn(index.identity[static_cast<std::size_t>(x)]);
      for (int e = 0; e < size(x); ++e)
        if (idf[static_cast<std::size_t>(e)] != e)
          throw std::logic_error("set family: identity function");
    }
    for (int f = 0; f < index.n_mors(); ++f)
      for (int g = 0; g < index.n_mors(); ++g) {
        int gf = index.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
        if (gf < 0) continue;
        for (int e = 0; e < static_cast<int>(fn(f).size()); ++e)
          if (fn(g)[static_cast<std::size_t>(fn(f)[static_cast<std::size_t>(e)])] !=
              fn(gf)[static_cast<std::size_t>(e)])
            throw std::logic_error("set family: composition");
      }
  }

  static SetFamily random(Rng& rng, const FinCat& index, int max_size = 3) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      SetFamily f;
      f.index = index;
      for (int i = 0; i < index.n_objects; ++i)
        f.sizes.push_back(static_cast<int>(rng.next_below(max_size + 1)));
      bool ok = true;
      for (int m = 0; m < index.n_mors() && ok; ++m) {
        const auto& mor = index.mors[static_cast<std::size_t>(m)];
        bool is_id = mor.src == mor.tgt && m == index.identity[static_cast<std::size_t>(mor.src)];
        std::vector<int> map;
        for (int e = 0; e < f.size(mor.src); ++e) {
          if (is_id) {
            map.push_back(e);
          } else {
            if (f.size(mor.tgt) == 0) {
              ok = false;
              break;
            }
            map.push_back(static_cast<int>(rng.next_below(f.size(mor.tgt))));
          }
        }
        f.fns.push_back(std::move(map));
      }
      if (!ok) continue;
      try {
        f.validate();
        return f;
      } catch (const std::logic_error&) {
      }
    }
    // constant-empty always works
    SetFamily f;
    f.index = index;
    f.sizes.assign(static_cast<std::size_t>(index.n_objects), 0);
    f.fns.assign(static_cast<std::size_t>(index.n_mors()), {});
    return f;
  }
};

// Colimit of a set-valued diagram: the disjoint union modulo the relation
// generated by x ~ F(α)(x), computed with union-find.
struct SetColimit {
  int size = 0;
  std::vector<std::vector<int>> cocone;  // per object: element → class
};

inline SetColimit finset_colim(const FinCat& index, const SetFamily& fam) {
  fam.validate();
  std::vector<int> offset(static_cast<std::size_t>(index.n_objects) + 1, 0);
  for (int i = 0; i < index.n_objects; ++i)
    offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + fam.size(i);
  int total = offset.back();
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  };
  for (int m = 0; m < index.n_mors(); ++m) {
    const auto& mor = index.mors[static_cast<std::size_t>(m)];
    for (int e = 0; e < fam.size(mor.src); ++e)
      unite(offset[static_cast<std::size_t>(mor.src)] + e,
            offset[static_cast<std::size_t>(mor.tgt)] + fam.fn(m)[static_cast<std::size_t>(e)]);
  }
  // compress classes to 0..k-1
  std::vector<int> clazz(static_cast<std::size_t>(total), -1);
  SetColimit out;
  for (int v = 0; v < total; ++v) {
    int root = find(v);
    if (clazz[static_cast<std::size_t>(root)] < 0) clazz[static_cast<std::size_t>(root)] = out.size++;
    clazz[static_cast<std::size_t>(v)] = clazz[static_cast<std::size_t>(root)];
  }
  for (int i = 0; i < index.n_objects; ++i) {
    std::vector<int> co;
    for (int e = 0; e < fam.size(i); ++e)
      co.push_back(clazz[static_cast<std::size_t>(offset[static_cast<std::size_t>(i)] + e)]);
    out.cocone.push_back(std::move(co));
  }
  return out;
}

// ---------------------------------------------------------------------------
// FinSet as a right Cat-module: sums are colimits, equality is
// bijection-up-to-cocone.
// ---------------------------------------------------------------------------

// Restriction of a set family on an oplax colimit along the injection ι_i.
inline SetFamily restrict_along_injection(const SetFamily& g, const OplaxColimit& col,
                                          const FinCat& fiber, int i) {
  SetFamily out;
  out.index = fiber;
  for (int j = 0; j < fiber.n_objects; ++j)
    out.sizes.push_back(g.size(col.obj_index.at({i, j})));
  for (int b = 0; b < fiber.n_mors(); ++b)
    out.fns.push_back(g.fn(col.injections[static_cast<std::size_t>(i)].on_mor(b)));
  out.validate();
  return out;
}

// Unit and sum-associativity of the FinSet Cat-module; associativity compares
// the colimit over an oplax colimit with the iterated colimit through the
// canonical map, which must be a well-defined bijection commuting with the
// cocones.
inline CheckResult cat_module_suite(std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "cat-module";
  CatAdder cat;
  for (std::uint64_t kk = 0; kk < cases; ++kk) {
    Rng rng = Rng::derive(seed, kk);
    ++out.cases_run;

    // unit: the colimit over the terminal category of a single set is that set
    {
      int n = 1 + static_cast<int>(rng.next_below(4));
      SetFamily single;
      single.index = terminal_cat();
      single.sizes = {n};
      single.fns = {std::vector<int>(static_cast<std::size_t>(n))};
      std::iota(single.fns[0].begin(), single.fns[0].end(), 0);
      SetColimit col = finset_colim(single.index, single);
      bool bij = col.size == n;
      std::vector<bool> hit(static_cast<std::size_t>(col.size), false);
      for (int e = 0; e < n; ++e) hit[static_cast<std::size_t>(col.cocone[0][static_cast<std::size_t>(e)])] = true;
      for (bool h : hit) bij = bij && h;
      if (!bij) {
        out.record(kk, "unit with n=" + std::to_string(n), std::to_string(col.size),
                   std::to_string(n));
        continue;
      }
    }

    // sum associativity
    FinCat index = cat.gen_elem(rng);
    CatFamily f = cat.gen_family(rng, index);
    OplaxColimit colf;
    try {
      colf = oplax_colim(index, f);
    } catch (const CatCapExceeded&) {
      ++out.cases_skipped;
      continue;
    }
    SetFamily g = SetFamily::random(rng, colf.total);
    SetColimit lhs = finset_colim(colf.total, g);

    // iterated: inner colimits per i with induced maps along index morphisms
    std::vector<SetColimit> inner;
    for (int i = 0; i < index.n_objects; ++i)
      inner.push_back(finset_colim(f.fiber(i), restrict_along_injection(g, colf, f.fiber(i), i)));
    SetFamily outer;
    outer.index = index;
    for (int i = 0; i < index.n_objects; ++i) outer.sizes.push_back(inner[static_cast<std::size_t>(i)].size);
    bool well_defined = true;
    for (int a = 0; a < index.n_mors() && well_defined; ++a) {
      const auto& am = index.mors[static_cast<std::size_t>(a)];
      std::vector<int> map(static_cast<std::size_t>(inner[static_cast<std::size_t>(am.src)].size), -1);
      for (int j = 0; j < f.fiber(am.src).n_objects && well_defined; ++j) {
        int faj = f.action(a).on_obj(j);
        int colmor = colf.mor_index.at(
            {a, j, f.fiber(am.tgt).identity[static_cast<std::size_t>(faj)]});
        for (int e = 0; e < g.size(colf.obj_index.at({am.src, j})); ++e) {
          int src_class = inner[static_cast<std::size_t>(am.src)].cocone[static_cast<std::size_t>(j)]
                              [static_cast<std::size_t>(e)];
          int tgt_class =
              inner[static_cast<std::size_t>(am.tgt)].cocone[static_cast<std::size_t>(faj)]
                   [static_cast<std::size_t>(g.fn(colmor)[static_cast<std::size_t>(e)])];
          if (map[static_cast<std::size_t>(src_class)] < 0)
            map[static_cast<std::size_t>(src_class)] = tgt_class;
          else if (map[static_cast<std::size_t>(src_class)] != tgt_class)
            well_defined = false;
        }
      }
      for (int& v : map)
        if (v < 0) v = 0;  // classes with no representative in this action's image
      outer.fns.push_back(std::move(map));
    }
    if (!well_defined) {
      out.record(kk, "induced maps on inner colimits not constant on classes", "", "");
      continue;
    }
    SetColimit rhs = finset_colim(index, outer);

    // canonical map lhs → rhs and its bijectivity
    std::vector<int> u(static_cast<std::size_t>(lhs.size), -1);
    bool ok = true;
    for (int o = 0; o < colf.total.n_objects && ok; ++o) {
      auto [i, j] = colf.obj_of[static_cast<std::size_t>(o)];
      for (int e = 0; e < g.size(o); ++e) {
        int from = lhs.cocone[static_cast<std::size_t>(o)][static_cast<std::size_t>(e)];
        int inner_class = inner[static_cast<std::size_t>(i)].cocone[static_cast<std::size_t>(j)]
                               [static_cast<std::size_t>(e)];
        int to = rhs.cocone[static_cast<std::size_t>(i)][static_cast<std::size_t>(inner_class)];
        if (u[static_cast<std::size_t>(from)] < 0)
          u[static_cast<std::size_t>(from)] = to;
        else if (u[static_cast<std::size_t>(from)] != to)
          ok = false;
      }
    }
    if (ok) {
      if (lhs.size != rhs.size) ok = false;
      std::vector<bool> hit(static_cast<std::size_t>(rhs.size), false);
      for (int v : u)
        if (v >= 0) hit[static_cast<std::size_t>(v)] = true;
      for (bool h : hit) ok = ok && h;
    }
    if (!ok)
      out.record(kk, "nested vs iterated colimit", std::to_string(lhs.size),
                 std::to_string(rhs.size));
  }
  return out;
}

// An endofunctor of finite sets, enough structure to test colimit preservation.
struct SetEndofunctor {
  std::string name;
  std::function<int(int)> size_map;
  // image function: given f : [n] → [m], produce T(f) : [T(n)] → [T(m)]
  std::function<std::vector<int>(const std::vector<int>&, int, int)> fn_map;

  static SetEndofunctor identity() {
    return {"identity", [](int n) { return n; },
            [](const std::vector<int>& f, int, int) { return f; }};
  }
  // X ↦ X × 2 preserves colimits
  static SetEndofunctor times_two() {
    return {"×2", [](int n) { return 2 * n; },
            [](const std::vector<int>& f, int, int) {
              std::vector<int> out(f.size() * 2);
              for (std::size_t e = 0; e < f.size(); ++e) {
                out[2 * e] = 2 * f[e];
                out[2 * e + 1] = 2 * f[e] + 1;
              }
              return out;
            }};
  }
  // X ↦ X ⊔ 1 does not (it already fails on the initial object / coproducts)
  static SetEndofunctor plus_one() {
    return {"⊔1", [](int n) { return n + 1; },
            [](const std::vector<int>& f, int, int m) {
              std::vector<int> out;
              for (int v : f) out.push_back(v);
              out.push_back(m);  // the added point maps to the added point
              return out;
            }};
  }
};

// Does T send colimit cocones to colimit cocones? The canonical comparison
// colim(T∘G) → T(colim G) must be a bijection on every generated diagram.
inline CheckResult cat_linear_check(const SetEndofunctor& T, std::uint64_t cases,
                                    std::uint64_t seed) {
  CheckResult out;
  out.axiom = "cat-linear(" + T.name + ")";
  CatAdder cat;
  for (std::uint64_t kk = 0; kk < cases; ++kk) {
    Rng rng = Rng::derive(seed, kk);
    FinCat index = cat.gen_elem(rng);
    SetFamily G = SetFamily::random(rng, index);
    SetColimit colG = finset_colim(index, G);
    ++out.cases_run;

    SetFamily TG;
    TG.index = index;
    for (int i = 0; i < index.n_objects; ++i) TG.sizes.push_back(T.size_map(G.size(i)));
    for (int m = 0; m < index.n_mors(); ++m) {
      const auto& mor = index.mors[static_cast<std::size_t>(m)];
      TG.fns.push_back(T.fn_map(G.fn(m), G.size(mor.src), G.size(mor.tgt)));
    }
    TG.validate();
    SetColimit colTG = finset_colim(index, TG);

    // comparison u : colim(T∘G) → T(colim G) via the mapped cocone legs
    int target_size = T.size_map(colG.size);
    std::vector<int> u(static_cast<std::size_t>(colTG.size), -1);
    bool ok = true;
    for (int i = 0; i < index.n_objects && ok; ++i) {
      std::vector<int> leg = T.fn_map(colG.cocone[static_cast<std::size_t>(i)], G.size(i), colG.size);
      for (int e = 0; e < TG.size(i); ++e) {
        int from = colTG.cocone[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
        int to = leg[static_cast<std::size_t>(e)];
        if (u[static_cast<std::size_t>(from)] < 0)
          u[static_cast<std::size_t>(from)] = to;
        else if (u[static_cast<std::size_t>(from)] != to)
          ok = false;
      }
    }
    if (ok) {
      if (colTG.size != target_size) ok = false;
      std::vector<bool> hit(static_cast<std::size_t>(target_size), false);
      for (int v : u)
        if (v >= 0) hit[static_cast<std::size_t>(v)] = true;
      for (bool h : hit) ok = ok && h;
    }
    if (!ok)
      out.record(kk, "diagram over " + index.name, std::to_string(colTG.size),
                 std::to_string(target_size));
  }
  return out;
}

}  // namespace depsum
