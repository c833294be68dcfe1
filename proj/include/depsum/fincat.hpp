#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "json.hpp"

namespace depsum {

// Size caps for categories. Inputs drawn from the catalog stay small; colimit
// constructions may grow to the derived caps and are skipped (with a count)
// beyond that. DEPSUM_MAX_SIZE scales the derived caps.
struct CatLimits {
  int catalog_objects = 6;
  int catalog_morphisms = 20;
  int derived_objects = 32;
  int derived_morphisms = 256;

  static const CatLimits& get() {
    static CatLimits limits = [] {
      CatLimits l;
      if (const char* env = std::getenv("DEPSUM_MAX_SIZE")) {
        int v = std::atoi(env);
        if (v > 0) {
          l.derived_objects = v;
          l.derived_morphisms = v * v;
        }
      }
      return l;
    }();
    return limits;
  }
};

struct CatCapExceeded : SkipCase {
  CatCapExceeded(int objs, int mors)
      : SkipCase("category size cap exceeded: " + std::to_string(objs) + " objects / " +
                 std::to_string(mors) + " morphisms") {}
};

// A finite category: indexed objects and morphisms, identity assignment, and
// a composition table comp[g][f] = g∘f (defined when tgt(f) == src(g)).
struct FinCat {
  struct Mor {
    int src = 0, tgt = 0;
  };
  std::string name;
  int n_objects = 0;
  std::vector<Mor> mors;
  std::vector<int> identity;            // object → morphism index
  std::vector<std::vector<int>> comp;   // comp[g][f], -1 where undefined

  int n_mors() const { return static_cast<int>(mors.size()); }

  int compose(int g, int f) const {
    int r = comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
    if (r < 0) throw std::logic_error(name + ": composing non-composable morphisms");
    return r;
  }

  std::vector<int> hom(int x, int y) const {
    std::vector<int> out;
    for (int m = 0; m < n_mors(); ++m)
      if (mors[static_cast<std::size_t>(m)].src == x && mors[static_cast<std::size_t>(m)].tgt == y)
        out.push_back(m);
    return out;
  }

  // exhaustive associativity and unit check; every constructed category runs it
  void validate() const {
    if (static_cast<int>(identity.size()) != n_objects)
      throw std::logic_error(name + ": identity table size");
    for (int x = 0; x < n_objects; ++x) {
      int id = identity[static_cast<std::size_t>(x)];
      if (mors[static_cast<std::size_t>(id)].src != x || mors[static_cast<std::size_t>(id)].tgt != x)
        throw std::logic_error(name + ": identity endpoints");
    }
    for (int f = 0; f < n_mors(); ++f) {
      const Mor& mf = mors[static_cast<std::size_t>(f)];
      if (comp[static_cast<std::size_t>(identity[static_cast<std::size_t>(mf.tgt)])]
              [static_cast<std::size_t>(f)] != f ||
          comp[static_cast<std::size_t>(f)]
              [static_cast<std::size_t>(identity[static_cast<std::size_t>(mf.src)])] != f)
        throw std::logic_error(name + ": unit law");
      for (int g = 0; g < n_mors(); ++g) {
        const Mor& mg = mors[static_cast<std::size_t>(g)];
        int gf = comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
        if ((mg.src == mf.tgt) != (gf >= 0))
          throw std::logic_error(name + ": composition domain");
        if (gf >= 0) {
          const Mor& mgf = mors[static_cast<std::size_t>(gf)];
          if (mgf.src != mf.src || mgf.tgt != mg.tgt)
            throw std::logic_error(name + ": composite endpoints");
        }
      }
    }
    for (int f = 0; f < n_mors(); ++f)
      for (int g = 0; g < n_mors(); ++g) {
        if (comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] < 0) continue;
        for (int h = 0; h < n_mors(); ++h) {
          if (comp[static_cast<std::size_t>(h)][static_cast<std::size_t>(g)] < 0) continue;
          int hg_f = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(h)]
                                                       [static_cast<std::size_t>(g)])]
                         [static_cast<std::size_t>(f)];
          int h_gf = comp[static_cast<std::size_t>(h)]
                         [static_cast<std::size_t>(comp[static_cast<std::size_t>(g)]
                                                       [static_cast<std::size_t>(f)])];
          if (hg_f != h_gf) throw std::logic_error(name + ": associativity");
        }
      }
  }

  void check_caps(bool derived) const {
    const CatLimits& l = CatLimits::get();
    int max_o = derived ? l.derived_objects : l.catalog_objects;
    int max_m = derived ? l.derived_morphisms : l.catalog_morphisms;
    if (n_objects > max_o || n_mors() > max_m) throw CatCapExceeded(n_objects, n_mors());
  }

  friend bool operator==(const FinCat& a, const FinCat& b) {
    return a.n_objects == b.n_objects && a.identity == b.identity && a.comp == b.comp &&
           [&] {
             if (a.mors.size() != b.mors.size()) return false;
             for (std::size_t i = 0; i < a.mors.size(); ++i)
               if (a.mors[i].src != b.mors[i].src || a.mors[i].tgt != b.mors[i].tgt) return false;
             return true;
           }();
  }
};

// Build a category from object count and arrow data with composites closed by
// saturation; composites must be named explicitly via the compose callback.
class FinCatBuilder {
public:
  explicit FinCatBuilder(std::string name, int n_objects) {
    cat_.name = std::move(name);
    cat_.n_objects = n_objects;
    for (int x = 0; x < n_objects; ++x) {
      cat_.identity.push_back(add_mor(x, x));
    }
  }

  int add_mor(int src, int tgt) {
    cat_.mors.push_back({src, tgt});
    return cat_.n_mors() - 1;
  }

  int identity_of(int x) const { return cat_.identity[static_cast<std::size_t>(x)]; }

  // comp entries default to identity-rules; explicit pairs fill the rest
  FinCat finish(const std::vector<std::tuple<int, int, int>>& table = {}) {
    int m = cat_.n_mors();
    cat_.comp.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (int f = 0; f < m; ++f) {
      cat_.comp[static_cast<std::size_t>(cat_.identity[static_cast<std::size_t>(
          cat_.mors[static_cast<std::size_t>(f)].tgt)])][static_cast<std::size_t>(f)] = f;
      cat_.comp[static_cast<std::size_t>(f)][static_cast<std::size_t>(
          cat_.identity[static_cast<std::size_t>(cat_.mors[static_cast<std::size_t>(f)].src)])] = f;
    }
    for (auto [g, f, gf] : table) cat_.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = gf;
    cat_.validate();
    return cat_;
  }

private:
  FinCat cat_;
};

// ---------------------------------------------------------------------------
// opposite category: same indices, reversed arrows, transposed composition
// ---------------------------------------------------------------------------
inline FinCat op_cat(const FinCat& c) {
  FinCat r = c;
  r.name = c.name + "^op";
  for (auto& m : r.mors) std::swap(m.src, m.tgt);
  for (int f = 0; f < c.n_mors(); ++f)
    for (int g = 0; g < c.n_mors(); ++g)
      r.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] =
          c.comp[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)];
  r.validate();
  return r;
}

// cartesian product of categories
inline FinCat prod_cat(const FinCat& a, const FinCat& b) {
  FinCat r;
  r.name = a.name + "×" + b.name;
  r.n_objects = a.n_objects * b.n_objects;
  auto obj = [&](int x, int y) { return x * b.n_objects + y; };
  auto mor_index = [&](int f, int g) { return f * b.n_mors() + g; };
  for (int f = 0; f < a.n_mors(); ++f)
    for (int g = 0; g < b.n_mors(); ++g)
      r.mors.push_back({obj(a.mors[static_cast<std::size_t>(f)].src,
                            b.mors[static_cast<std::size_t>(g)].src),
                        obj(a.mors[static_cast<std::size_t>(f)].tgt,
                            b.mors[static_cast<std::size_t>(g)].tgt)});
  for (int x = 0; x < a.n_objects; ++x)
    for (int y = 0; y < b.n_objects; ++y)
      r.identity.push_back(mor_index(a.identity[static_cast<std::size_t>(x)],
                                     b.identity[static_cast<std::size_t>(y)]));
  int m = r.n_mors();
  r.comp.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int f1 = 0; f1 < a.n_mors(); ++f1)
    for (int g1 = 0; g1 < b.n_mors(); ++g1)
      for (int f2 = 0; f2 < a.n_mors(); ++f2)
        for (int g2 = 0; g2 < b.n_mors(); ++g2) {
          int cf = a.comp[static_cast<std::size_t>(f2)][static_cast<std::size_t>(f1)];
          int cg = b.comp[static_cast<std::size_t>(g2)][static_cast<std::size_t>(g1)];
          if (cf >= 0 && cg >= 0)
            r.comp[static_cast<std::size_t>(mor_index(f2, g2))]
                  [static_cast<std::size_t>(mor_index(f1, g1))] = mor_index(cf, cg);
        }
  r.validate();
  return r;
}

// ---------------------------------------------------------------------------
// functors and natural transformations
// ---------------------------------------------------------------------------
struct FinFunctor {
  FinCat dom, cod;
  std::vector<int> obj_map;
  std::vector<int> mor_map;

  void validate() const {
    for (int x = 0; x < dom.n_objects; ++x)
      if (mor_map[static_cast<std::size_t>(dom.identity[static_cast<std::size_t>(x)])] !=
          cod.identity[static_cast<std::size_t>(obj_map[static_cast<std::size_t>(x)])])
        throw std::logic_error("functor: identity not preserved");
    for (int f = 0; f < dom.n_mors(); ++f) {
      const auto& m = dom.mors[static_cast<std::size_t>(f)];
      const auto& im = cod.mors[static_cast<std::size_t>(mor_map[static_cast<std::size_t>(f)])];
      if (im.src != obj_map[static_cast<std::size_t>(m.src)] ||
          im.tgt != obj_map[static_cast<std::size_t>(m.tgt)])
        throw std::logic_error("functor: endpoints not preserved");
      for (int g = 0; g < dom.n_mors(); ++g) {
        int gf = dom.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
        if (gf < 0) continue;
        int img = cod.comp[static_cast<std::size_t>(mor_map[static_cast<std::size_t>(g)])]
                          [static_cast<std::size_t>(mor_map[static_cast<std::size_t>(f)])];
        if (img != mor_map[static_cast<std::size_t>(gf)])
          throw std::logic_error("functor: composition not preserved");
      }
    }
  }

  int on_obj(int x) const { return obj_map[static_cast<std::size_t>(x)]; }
  int on_mor(int f) const { return mor_map[static_cast<std::size_t>(f)]; }

  static FinFunctor identity(const FinCat& c) {
    FinFunctor f{c, c, {}, {}};
    for (int x = 0; x < c.n_objects; ++x) f.obj_map.push_back(x);
    for (int m = 0; m < c.n_mors(); ++m) f.mor_map.push_back(m);
    return f;
  }

  // g ∘ f
  static FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
    FinFunctor r{f.dom, g.cod, {}, {}};
    for (int x = 0; x < f.dom.n_objects; ++x) r.obj_map.push_back(g.on_obj(f.on_obj(x)));
    for (int m = 0; m < f.dom.n_mors(); ++m) r.mor_map.push_back(g.on_mor(f.on_mor(m)));
    return r;
  }

  FinFunctor op() const {
    FinFunctor r{op_cat(dom), op_cat(cod), obj_map, mor_map};
    return r;
  }
};

struct FinNatTrans {
  FinFunctor from, to;               // parallel functors
  std::vector<int> components;       // object of dom → morphism of cod

  void validate() const {
    const FinCat& d = from.dom;
    const FinCat& c = from.cod;
    for (int x = 0; x < d.n_objects; ++x) {
      const auto& comp_mor = c.mors[static_cast<std::size_t>(components[static_cast<std::size_t>(x)])];
      if (comp_mor.src != from.on_obj(x) || comp_mor.tgt != to.on_obj(x))
        throw std::logic_error("nat trans: component endpoints");
    }
    for (int f = 0; f < d.n_mors(); ++f) {
      const auto& m = d.mors[static_cast<std::size_t>(f)];
      int lhs = c.compose(components[static_cast<std::size_t>(m.tgt)], from.on_mor(f));
      int rhs = c.compose(to.on_mor(f), components[static_cast<std::size_t>(m.src)]);
      if (lhs != rhs) throw std::logic_error("nat trans: naturality square");
    }
  }
};

// all functors C → D (exhaustive; intended for small catalog categories)
inline std::vector<FinFunctor> all_functors(const FinCat& c, const FinCat& d,
                                            std::size_t cap = 4096) {
  std::vector<FinFunctor> out;
  std::vector<int> obj_map(static_cast<std::size_t>(c.n_objects), 0);
  std::function<void(int)> rec_obj = [&](int x) {
    if (out.size() > cap) return;
    if (x == c.n_objects) {
      // extend to morphisms by backtracking
      std::vector<int> mor_map(static_cast<std::size_t>(c.n_mors()), -1);
      for (int o = 0; o < c.n_objects; ++o)
        mor_map[static_cast<std::size_t>(c.identity[static_cast<std::size_t>(o)])] =
            d.identity[static_cast<std::size_t>(obj_map[static_cast<std::size_t>(o)])];
      std::function<bool(int)> rec_mor = [&](int f) {
        if (out.size() > cap) return true;
        while (f < c.n_mors() && mor_map[static_cast<std::size_t>(f)] >= 0) ++f;
        if (f == c.n_mors()) {
          FinFunctor fn{c, d, obj_map, mor_map};
          try {
            fn.validate();
            out.push_back(fn);
          } catch (const std::logic_error&) {
          }
          return false;
        }
        const auto& m = c.mors[static_cast<std::size_t>(f)];
        for (int im : d.hom(obj_map[static_cast<std::size_t>(m.src)],
                            obj_map[static_cast<std::size_t>(m.tgt)])) {
          mor_map[static_cast<std::size_t>(f)] = im;
          rec_mor(f + 1);
        }
        mor_map[static_cast<std::size_t>(f)] = -1;
        return false;
      };
      rec_mor(0);
      return;
    }
    for (int y = 0; y < d.n_objects; ++y) {
      obj_map[static_cast<std::size_t>(x)] = y;
      rec_obj(x + 1);
    }
  };
  rec_obj(0);
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism search: a backtracking hunt for a functor bijective on objects
// and morphisms whose inverse is again a functor
// ---------------------------------------------------------------------------
namespace detail {

// Iterated color refinement on hom-set-size profiles; isomorphic objects must
// share a color, which prunes the backtracking sharply on colimit-sized
// categories.
inline std::vector<int> refine_colors(const FinCat& c) {
  int n = c.n_objects;
  std::vector<std::vector<int>> homsize(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n), 0));
  for (const auto& m : c.mors)
    ++homsize[static_cast<std::size_t>(m.src)][static_cast<std::size_t>(m.tgt)];
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  for (int round = 0; round < n; ++round) {
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      std::vector<int>& s = sig[static_cast<std::size_t>(x)];
      s.push_back(color[static_cast<std::size_t>(x)]);
      std::vector<std::pair<int, int>> out, in;
      for (int y = 0; y < n; ++y) {
        if (homsize[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])
          out.push_back({color[static_cast<std::size_t>(y)],
                         homsize[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]});
        if (homsize[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)])
          in.push_back({color[static_cast<std::size_t>(y)],
                        homsize[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]});
      }
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
      s.push_back(-1);
      for (auto [cc, k] : out) {
        s.push_back(cc);
        s.push_back(k);
      }
      s.push_back(-2);
      for (auto [cc, k] : in) {
        s.push_back(cc);
        s.push_back(k);
      }
    }
    // canonical renumbering of signatures
    std::vector<std::vector<int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      next[static_cast<std::size_t>(x)] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[static_cast<std::size_t>(x)]) -
          sorted.begin());
    if (next == color) break;
    color = next;
  }
  return color;
}

}  // namespace detail

inline std::optional<FinFunctor> cat_iso(const FinCat& c, const FinCat& d) {
  if (c.n_objects != d.n_objects || c.n_mors() != d.n_mors()) return std::nullopt;
  auto col_c = detail::refine_colors(c);
  auto col_d = detail::refine_colors(d);
  {
    auto sc = col_c;
    auto sd = col_d;
    std::sort(sc.begin(), sc.end());
    std::sort(sd.begin(), sd.end());
    if (sc != sd) return std::nullopt;
  }
  // assign rare colors first
  std::vector<int> order(static_cast<std::size_t>(c.n_objects));
  {
    std::vector<int> freq(static_cast<std::size_t>(c.n_objects) + 1, 0);
    for (int col : col_c) ++freq[static_cast<std::size_t>(col)];
    for (int x = 0; x < c.n_objects; ++x) order[static_cast<std::size_t>(x)] = x;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return freq[static_cast<std::size_t>(col_c[static_cast<std::size_t>(a)])] <
             freq[static_cast<std::size_t>(col_c[static_cast<std::size_t>(b)])];
    });
  }
  std::vector<int> obj_map(static_cast<std::size_t>(c.n_objects), -1);
  std::vector<bool> used(static_cast<std::size_t>(d.n_objects), false);
  std::optional<FinFunctor> found;
  long budget = 2000000;

  std::function<bool(std::size_t)> rec_obj = [&](std::size_t step) -> bool {
    if (--budget < 0) throw SkipCase("cat_iso: search budget exhausted");
    if (step == order.size()) {
      for (int a = 0; a < c.n_objects; ++a)
        for (int b = 0; b < c.n_objects; ++b)
          if (c.hom(a, b).size() !=
              d.hom(obj_map[static_cast<std::size_t>(a)], obj_map[static_cast<std::size_t>(b)])
                  .size())
            return false;
      std::vector<int> mor_map(static_cast<std::size_t>(c.n_mors()), -1);
      std::vector<bool> mused(static_cast<std::size_t>(d.n_mors()), false);
      for (int o = 0; o < c.n_objects; ++o) {
        int id_im = d.identity[static_cast<std::size_t>(obj_map[static_cast<std::size_t>(o)])];
        mor_map[static_cast<std::size_t>(c.identity[static_cast<std::size_t>(o)])] = id_im;
        mused[static_cast<std::size_t>(id_im)] = true;
      }
      std::function<bool(int)> rec_mor = [&](int f) -> bool {
        if (--budget < 0) throw SkipCase("cat_iso: search budget exhausted");
        while (f < c.n_mors() && mor_map[static_cast<std::size_t>(f)] >= 0) ++f;
        if (f == c.n_mors()) {
          FinFunctor fn{c, d, obj_map, mor_map};
          try {
            fn.validate();
          } catch (const std::logic_error&) {
            return false;
          }
          found = fn;
          return true;
        }
        const auto& m = c.mors[static_cast<std::size_t>(f)];
        for (int im : d.hom(obj_map[static_cast<std::size_t>(m.src)],
                            obj_map[static_cast<std::size_t>(m.tgt)])) {
          if (mused[static_cast<std::size_t>(im)]) continue;
          bool ok = true;
          for (int g = 0; g < c.n_mors() && ok; ++g) {
            if (mor_map[static_cast<std::size_t>(g)] < 0) continue;
            int gf = c.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
            if (gf >= 0 && mor_map[static_cast<std::size_t>(gf)] >= 0) {
              int im_gf = d.comp[static_cast<std::size_t>(mor_map[static_cast<std::size_t>(g)])]
                                [static_cast<std::size_t>(im)];
              ok = im_gf == mor_map[static_cast<std::size_t>(gf)];
            }
            if (!ok) break;
            int fg = c.comp[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)];
            if (fg >= 0 && mor_map[static_cast<std::size_t>(fg)] >= 0) {
              int im_fg = d.comp[static_cast<std::size_t>(im)]
                                [static_cast<std::size_t>(mor_map[static_cast<std::size_t>(g)])];
              ok = im_fg == mor_map[static_cast<std::size_t>(fg)];
            }
          }
          if (!ok) continue;
          mor_map[static_cast<std::size_t>(f)] = im;
          mused[static_cast<std::size_t>(im)] = true;
          if (rec_mor(f + 1)) return true;
          mor_map[static_cast<std::size_t>(f)] = -1;
          mused[static_cast<std::size_t>(im)] = false;
        }
        return false;
      };
      return rec_mor(0);
    }
    int x = order[step];
    for (int y = 0; y < d.n_objects; ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      if (col_c[static_cast<std::size_t>(x)] != col_d[static_cast<std::size_t>(y)]) continue;
      // partial hom-size consistency against already-placed objects
      bool ok = true;
      for (std::size_t prev = 0; prev < step && ok; ++prev) {
        int x2 = order[prev];
        int y2 = obj_map[static_cast<std::size_t>(x2)];
        ok = c.hom(x, x2).size() == d.hom(y, y2).size() &&
             c.hom(x2, x).size() == d.hom(y2, y).size();
      }
      if (!ok) continue;
      obj_map[static_cast<std::size_t>(x)] = y;
      used[static_cast<std::size_t>(y)] = true;
      if (rec_obj(step + 1)) return true;
      obj_map[static_cast<std::size_t>(x)] = -1;
      used[static_cast<std::size_t>(y)] = false;
    }
    return false;
  };
  if (rec_obj(0)) return found;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON round trip:
// {"objects":[...], "morphisms":[{"id","src","tgt"}...], "compose":[[...]],
//  "identities":[...]}
// ---------------------------------------------------------------------------
inline nlohmann::json cat_to_json(const FinCat& c) {
  nlohmann::json j;
  j["objects"] = nlohmann::json::array();
  for (int x = 0; x < c.n_objects; ++x) j["objects"].push_back(x);
  j["morphisms"] = nlohmann::json::array();
  for (int m = 0; m < c.n_mors(); ++m)
    j["morphisms"].push_back({{"id", m},
                              {"src", c.mors[static_cast<std::size_t>(m)].src},
                              {"tgt", c.mors[static_cast<std::size_t>(m)].tgt}});
  j["compose"] = c.comp;
  j["identities"] = c.identity;
  return j;
}

inline FinCat cat_from_json(const nlohmann::json& j) {
  FinCat c;
  c.name = j.value("name", "json");
  c.n_objects = static_cast<int>(j.at("objects").size());
  for (const auto& m : j.at("morphisms"))
    c.mors.push_back({m.at("src").get<int>(), m.at("tgt").get<int>()});
  c.identity = j.at("identities").get<std::vector<int>>();
  c.comp = j.at("compose").get<std::vector<std::vector<int>>>();
  c.validate();
  return c;
}

}  // namespace depsum
