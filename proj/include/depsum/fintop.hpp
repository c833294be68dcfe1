#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "depsum/rng.hpp"
#include "json.hpp"

namespace depsum {

// Finite topological space presented as a preorder; opens are the up-closed
// subsets, materialized as bitmasks. Base spaces stay at <= 5 points; étalé
// spaces may grow to the germ cap and keep the same representation.
struct FinTop {
  std::string name;
  int n_points = 0;
  std::vector<std::vector<bool>> leq;  // leq[x][y]: x specializes to y (x <= y)
  std::vector<std::uint32_t> opens;    // sorted bitmasks, includes 0 and full

  static constexpr int kMaxEtalePoints = 24;
  static constexpr std::size_t kMaxOpens = 4096;

  bool le(int x, int y) const { return leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }

  std::uint32_t full_mask() const {
    return n_points == 32 ? 0xffffffffu : ((1u << n_points) - 1u);
  }

  // minimal open containing x: the up-closure of x
  std::uint32_t umin(int x) const {
    std::uint32_t m = 0;
    for (int y = 0; y < n_points; ++y)
      if (le(x, y)) m |= (1u << y);
    return m;
  }

  bool is_up_closed(std::uint32_t mask) const {
    for (int x = 0; x < n_points; ++x) {
      if (!(mask & (1u << x))) continue;
      if ((mask & umin(x)) != umin(x)) return false;
    }
    return true;
  }

  void build_opens() {
    opens.clear();
    if (n_points > kMaxEtalePoints) throw SkipCase("fintop: too many points");
    if (n_points <= 12) {
      for (std::uint32_t mask = 0; mask <= full_mask(); ++mask)
        if (is_up_closed(mask)) opens.push_back(mask);
      if (full_mask() == 0) opens = {0};
    } else {
      // generate as unions of minimal opens
      std::vector<std::uint32_t> gen;
      for (int x = 0; x < n_points; ++x) gen.push_back(umin(x));
      std::vector<std::uint32_t> acc{0};
      for (std::uint32_t g : gen) {
        std::vector<std::uint32_t> next = acc;
        for (std::uint32_t m : acc) {
          std::uint32_t u = m | g;
          if (std::find(next.begin(), next.end(), u) == next.end()) next.push_back(u);
        }
        acc = std::move(next);
        if (acc.size() > kMaxOpens) throw SkipCase("fintop: open lattice too large");
      }
      opens = std::move(acc);
    }
    std::sort(opens.begin(), opens.end());
    if (opens.size() > kMaxOpens) throw SkipCase("fintop: open lattice too large");
  }

  int open_index(std::uint32_t mask) const {
    auto it = std::lower_bound(opens.begin(), opens.end(), mask);
    if (it == opens.end() || *it != mask) throw std::invalid_argument(name + ": not an open set");
    return static_cast<int>(it - opens.begin());
  }

  void validate() const {
    for (int x = 0; x < n_points; ++x) {
      if (!le(x, x)) throw std::logic_error(name + ": preorder not reflexive");
      for (int y = 0; y < n_points; ++y)
        for (int z = 0; z < n_points; ++z)
          if (le(x, y) && le(y, z) && !le(x, z))
            throw std::logic_error(name + ": preorder not transitive");
    }
    for (std::uint32_t u : opens)
      if (!is_up_closed(u)) throw std::logic_error(name + ": open not up-closed");
  }

  static FinTop from_preorder(std::string name, int n,
                              const std::vector<std::pair<int, int>>& below) {
    FinTop t;
    t.name = std::move(name);
    t.n_points = n;
    t.leq.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int x = 0; x < n; ++x) t.leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] = true;
    for (auto [x, y] : below) t.leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = true;
    // transitive closure
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (t.le(i, k) && t.le(k, j)) t.leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    t.build_opens();
    t.validate();
    return t;
  }
};

// preorder isomorphism = homeomorphism of finite spaces
inline std::optional<std::vector<int>> fintop_iso(const FinTop& a, const FinTop& b) {
  if (a.n_points != b.n_points) return std::nullopt;
  int n = a.n_points;
  auto degree = [](const FinTop& t, int x) {
    int up = 0, down = 0;
    for (int y = 0; y < t.n_points; ++y) {
      if (t.le(x, y)) ++up;
      if (t.le(y, x)) ++down;
    }
    return std::pair{up, down};
  };
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      if (degree(a, x) != degree(b, y)) continue;
      bool ok = true;
      for (int x2 = 0; x2 < x && ok; ++x2) {
        ok = a.le(x, x2) == b.le(y, map[static_cast<std::size_t>(x2)]) &&
             a.le(x2, x) == b.le(map[static_cast<std::size_t>(x2)], y);
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(x)] = y;
      used[static_cast<std::size_t>(y)] = true;
      if (rec(x + 1)) return true;
      map[static_cast<std::size_t>(x)] = -1;
      used[static_cast<std::size_t>(y)] = false;
    }
    return false;
  };
  if (rec(0)) return map;
  return std::nullopt;
}

// A continuous open map between finite spaces, validated exhaustively.
struct OpenMap {
  FinTop dom, cod;
  std::vector<int> fn;

  std::uint32_t image(std::uint32_t mask) const {
    std::uint32_t out = 0;
    for (int x = 0; x < dom.n_points; ++x)
      if (mask & (1u << x)) out |= (1u << fn[static_cast<std::size_t>(x)]);
    return out;
  }
  std::uint32_t preimage(std::uint32_t mask) const {
    std::uint32_t out = 0;
    for (int x = 0; x < dom.n_points; ++x)
      if (mask & (1u << fn[static_cast<std::size_t>(x)])) out |= (1u << x);
    return out;
  }

  void validate() const {
    for (std::uint32_t u : cod.opens)
      if (!dom.is_up_closed(preimage(u))) throw std::logic_error("open map: not continuous");
    for (std::uint32_t u : dom.opens)
      if (!cod.is_up_closed(image(u))) throw std::logic_error("open map: not open");
  }
};

// Presheaf on a finite space: a section count per open and a restriction table
// per inclusion, validated for functoriality.
struct Presheaf {
  FinTop space;
  std::vector<int> sections;  // per open index
  // res[{sub, super}] maps sections over `super` to sections over `sub`
  std::map<std::pair<int, int>, std::vector<int>> res;

  int count(int open_idx) const { return sections[static_cast<std::size_t>(open_idx)]; }

  int restrict_section(int sub_idx, int super_idx, int s) const {
    if (sub_idx == super_idx) return s;
    return res.at({sub_idx, super_idx})[static_cast<std::size_t>(s)];
  }

  void validate() const {
    std::size_t n = space.opens.size();
    if (sections.size() != n) throw std::logic_error("presheaf: section table size");
    std::vector<std::vector<int>> subs(n);  // proper sub-opens per open
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u) {
        if (u == v) continue;
        if ((space.opens[v] & space.opens[u]) == space.opens[v])
          subs[u].push_back(static_cast<int>(v));
      }
    for (std::size_t u = 0; u < n; ++u)
      for (int v : subs[u]) {
        auto it = res.find({v, static_cast<int>(u)});
        if (it == res.end()) throw std::logic_error("presheaf: missing restriction");
        if (static_cast<int>(it->second.size()) != count(static_cast<int>(u)))
          throw std::logic_error("presheaf: restriction arity");
        for (int s : it->second)
          if (s < 0 || s >= count(v)) throw std::logic_error("presheaf: restriction range");
      }
    for (std::size_t u = 0; u < n; ++u)
      for (int v : subs[u])
        for (int w : subs[static_cast<std::size_t>(v)])
          for (int s = 0; s < count(static_cast<int>(u)); ++s)
            if (restrict_section(w, v, restrict_section(v, static_cast<int>(u), s)) !=
                restrict_section(w, static_cast<int>(u), s))
              throw std::logic_error("presheaf: restrictions do not compose");
  }

  // the constant presheaf with singleton sections
  static Presheaf constant_singleton(const FinTop& space) {
    Presheaf f;
    f.space = space;
    f.sections.assign(space.opens.size(), 1);
    for (std::size_t v = 0; v < space.opens.size(); ++v)
      for (std::size_t u = 0; u < space.opens.size(); ++u)
        if (u != v && (space.opens[v] & space.opens[u]) == space.opens[v])
          f.res[{static_cast<int>(v), static_cast<int>(u)}] = {0};
    return f;
  }

  // coproduct of representables y(U_1) ⊔ ... ⊔ y(U_k): a section of V per U_i
  // containing V; restrictions are index-preserving
  static Presheaf representable_sum(const FinTop& space, const std::vector<std::uint32_t>& us) {
    Presheaf f;
    f.space = space;
    std::vector<std::vector<int>> labels(space.opens.size());
    for (std::size_t v = 0; v < space.opens.size(); ++v)
      for (std::size_t k = 0; k < us.size(); ++k)
        if ((space.opens[v] & us[k]) == space.opens[v]) labels[v].push_back(static_cast<int>(k));
    for (auto& l : labels) f.sections.push_back(static_cast<int>(l.size()));
    for (std::size_t v = 0; v < space.opens.size(); ++v)
      for (std::size_t u = 0; u < space.opens.size(); ++u) {
        if (u == v || (space.opens[v] & space.opens[u]) != space.opens[v]) continue;
        std::vector<int> map;
        for (int lab : labels[u]) {
          auto it = std::find(labels[v].begin(), labels[v].end(), lab);
          map.push_back(static_cast<int>(it - labels[v].begin()));
        }
        f.res[{static_cast<int>(v), static_cast<int>(u)}] = std::move(map);
      }
    return f;
  }

  // two global sections that collapse to one on every proper open
  static Presheaf collapse_pair(const FinTop& space) {
    Presheaf f;
    f.space = space;
    std::uint32_t full = space.full_mask();
    for (std::size_t v = 0; v < space.opens.size(); ++v)
      f.sections.push_back(space.opens[v] == full ? 2 : 1);
    for (std::size_t v = 0; v < space.opens.size(); ++v)
      for (std::size_t u = 0; u < space.opens.size(); ++u) {
        if (u == v || (space.opens[v] & space.opens[u]) != space.opens[v]) continue;
        std::vector<int> map(static_cast<std::size_t>(f.sections[u]), 0);
        if (space.opens[v] == full)
          for (int s = 0; s < f.sections[u]; ++s) map[static_cast<std::size_t>(s)] = s;
        f.res[{static_cast<int>(v), static_cast<int>(u)}] = std::move(map);
      }
    return f;
  }
};

// stalk at x: sections over the minimal open of x
inline int stalk_size(const Presheaf& f, int x) {
  return f.count(f.space.open_index(f.space.umin(x)));
}
inline int germ_at(const Presheaf& f, int x, int open_idx, int s) {
  return f.restrict_section(f.space.open_index(f.space.umin(x)), open_idx, s);
}

// ---------------------------------------------------------------------------
// the étalé space: points are germs, topology generated by the germ graphs
// ε(U, s) = {(x, s_x) | x ∈ U}
// ---------------------------------------------------------------------------
struct EtaleSpace {
  FinTop space;                                      // points are germ pairs
  FinTop base;
  std::vector<std::pair<int, int>> point_of;         // point → (x, germ)
  std::map<std::pair<int, int>, int> point_index;    // (x, germ) → point
  std::map<std::pair<int, int>, std::uint32_t> eps;  // (open idx, section) → mask

  std::uint32_t eps_mask(int open_idx, int s) const { return eps.at({open_idx, s}); }

  // the projection to the base
  OpenMap projection() const {
    OpenMap p{space, base, {}};
    for (const auto& [x, germ] : point_of) {
      (void)germ;
      p.fn.push_back(x);
    }
    return p;
  }
};

inline EtaleSpace etale(const Presheaf& f) {
  EtaleSpace et;
  et.base = f.space;
  int total = 0;
  for (int x = 0; x < f.space.n_points; ++x) {
    for (int s = 0; s < stalk_size(f, x); ++s) {
      et.point_index[{x, s}] = total++;
      et.point_of.push_back({x, s});
    }
  }
  if (total > FinTop::kMaxEtalePoints) throw SkipCase("etale: germ count exceeds cap");
  et.space.name = "Et";
  et.space.n_points = total;
  // ε-sets as point masks
  for (std::size_t u = 0; u < f.space.opens.size(); ++u)
    for (int s = 0; s < f.count(static_cast<int>(u)); ++s) {
      std::uint32_t mask = 0;
      for (int x = 0; x < f.space.n_points; ++x)
        if (f.space.opens[u] & (1u << x))
          mask |= (1u << et.point_index.at({x, germ_at(f, x, static_cast<int>(u), s)}));
      et.eps[{static_cast<int>(u), s}] = mask;
    }
  // specialization preorder: p ≤ q iff q lies in every generator containing p
  et.space.leq.assign(static_cast<std::size_t>(total),
                      std::vector<bool>(static_cast<std::size_t>(total), true));
  for (const auto& [key, mask] : et.eps)
    for (int p = 0; p < total; ++p) {
      if (!(mask & (1u << p))) continue;
      for (int q = 0; q < total; ++q)
        if (!(mask & (1u << q))) et.space.leq[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = false;
    }
  et.space.build_opens();
  et.space.validate();
  // the topology generated by the ε-sets is exactly the up-set topology:
  // every ε-set must be open, and every minimal open a union of ε-images
  for (const auto& [key, mask] : et.eps)
    if (!et.space.is_up_closed(mask)) throw std::logic_error("etale: ε-set not open");
  return et;
}

// map on étalé spaces induced by a presheaf morphism τ (per-open section maps)
struct PresheafMorphism {
  // component per open index: sections of F over U → sections of G over U
  std::vector<std::vector<int>> components;

  void validate(const Presheaf& f, const Presheaf& g) {
    for (std::size_t v = 0; v < f.space.opens.size(); ++v)
      for (std::size_t u = 0; u < f.space.opens.size(); ++u) {
        if (u == v || (f.space.opens[v] & f.space.opens[u]) != f.space.opens[v]) continue;
        for (int s = 0; s < f.count(static_cast<int>(u)); ++s) {
          int lhs = g.restrict_section(static_cast<int>(v), static_cast<int>(u),
                                       components[u][static_cast<std::size_t>(s)]);
          int rhs = components[v][static_cast<std::size_t>(
              f.restrict_section(static_cast<int>(v), static_cast<int>(u), s))];
          if (lhs != rhs) throw std::logic_error("presheaf morphism: naturality");
        }
      }
  }
};

inline OpenMap etale_map(const Presheaf& f, const PresheafMorphism& tau,
                         const EtaleSpace& etf, const EtaleSpace& etg) {
  OpenMap out{etf.space, etg.space, {}};
  for (const auto& [x, germ] : etf.point_of) {
    int umin_idx = f.space.open_index(f.space.umin(x));
    out.fn.push_back(etg.point_index.at({x, tau.components[static_cast<std::size_t>(umin_idx)]
                                                [static_cast<std::size_t>(germ)]}));
  }
  out.validate();
  return out;
}

// f*(F)(U) := F(f(U)) for an open map f : X → Y and a presheaf F on Y
inline Presheaf pullback_presheaf(const OpenMap& f, const Presheaf& F) {
  Presheaf out;
  out.space = f.dom;
  for (std::uint32_t u : f.dom.opens)
    out.sections.push_back(F.count(F.space.open_index(f.image(u))));
  for (std::size_t v = 0; v < f.dom.opens.size(); ++v)
    for (std::size_t u = 0; u < f.dom.opens.size(); ++u) {
      if (u == v || (f.dom.opens[v] & f.dom.opens[u]) != f.dom.opens[v]) continue;
      int fu = F.space.open_index(f.image(f.dom.opens[u]));
      int fv = F.space.open_index(f.image(f.dom.opens[v]));
      std::vector<int> map;
      for (int s = 0; s < F.count(fu); ++s) map.push_back(F.restrict_section(fv, fu, s));
      out.res[{static_cast<int>(v), static_cast<int>(u)}] = std::move(map);
    }
  out.validate();
  return out;
}

// the natural open map Et(f*F) → Et(F)
inline OpenMap et_pullback_map(const OpenMap& f, const Presheaf& F, const EtaleSpace& et_pull,
                               const EtaleSpace& et_f) {
  OpenMap out{et_pull.space, et_f.space, {}};
  for (const auto& [x, germ] : et_pull.point_of) {
    // germ lives over F(f(umin(x))); restrict to the stalk at f(x)
    int fu = F.space.open_index(f.image(f.dom.umin(x)));
    int fx = f.fn[static_cast<std::size_t>(x)];
    int target_umin = F.space.open_index(F.space.umin(fx));
    out.fn.push_back(et_f.point_index.at({fx, F.restrict_section(target_umin, fu, germ)}));
  }
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// F ⊠ G for F on X and G on Et(F): sections over V are pairs (s, t) with
// s ∈ F(V) and t ∈ G(ε_F(V, s))
// ---------------------------------------------------------------------------
struct BoxtimesPresheaf {
  Presheaf sheaf;                                     // the presheaf F ⊠ G on X
  std::vector<std::vector<std::pair<int, int>>> pairs;  // per open: section → (s, t)
};

inline BoxtimesPresheaf boxtimes_presheaf(const Presheaf& f, const EtaleSpace& etf,
                                          const Presheaf& g) {
  BoxtimesPresheaf out;
  out.sheaf.space = f.space;
  std::size_t n = f.space.opens.size();
  out.pairs.assign(n, {});
  for (std::size_t v = 0; v < n; ++v) {
    for (int s = 0; s < f.count(static_cast<int>(v)); ++s) {
      int eps_idx = g.space.open_index(etf.eps_mask(static_cast<int>(v), s));
      for (int t = 0; t < g.count(eps_idx); ++t)
        out.pairs[v].push_back({s, t});
    }
    out.sheaf.sections.push_back(static_cast<int>(out.pairs[v].size()));
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || (f.space.opens[v] & f.space.opens[u]) != f.space.opens[v]) continue;
      std::vector<int> map;
      for (auto [s, t] : out.pairs[u]) {
        int s2 = f.restrict_section(static_cast<int>(v), static_cast<int>(u), s);
        // ε is monotone: ε(V, s|V) ⊆ ε(U, s), so t restricts along it
        int eps_u = g.space.open_index(etf.eps_mask(static_cast<int>(u), s));
        int eps_v = g.space.open_index(etf.eps_mask(static_cast<int>(v), s2));
        int t2 = g.restrict_section(eps_v, eps_u, t);
        auto it = std::find(out.pairs[v].begin(), out.pairs[v].end(), std::pair{s2, t2});
        map.push_back(static_cast<int>(it - out.pairs[v].begin()));
      }
      out.sheaf.res[{static_cast<int>(v), static_cast<int>(u)}] = std::move(map);
    }
  out.sheaf.validate();
  return out;
}

// ---------------------------------------------------------------------------
// JSON round trip for spaces and presheaves (opens keyed by point lists)
// ---------------------------------------------------------------------------
inline nlohmann::json fintop_to_json(const FinTop& t) {
  nlohmann::json j;
  j["points"] = t.n_points;
  j["preorder"] = nlohmann::json::array();
  for (int x = 0; x < t.n_points; ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < t.n_points; ++y) row.push_back(t.le(x, y));
    j["preorder"].push_back(row);
  }
  return j;
}

inline FinTop fintop_from_json(const nlohmann::json& j) {
  FinTop t;
  t.name = j.value("name", "json");
  t.n_points = j.at("points").get<int>();
  for (const auto& row : j.at("preorder")) {
    std::vector<bool> r;
    for (const auto& v : row) r.push_back(v.get<bool>());
    t.leq.push_back(r);
  }
  t.build_opens();
  t.validate();
  return t;
}

inline nlohmann::json open_to_point_list(const FinTop& t, std::uint32_t mask) {
  nlohmann::json pts = nlohmann::json::array();
  for (int x = 0; x < t.n_points; ++x)
    if (mask & (1u << x)) pts.push_back(x);
  return pts;
}

inline nlohmann::json presheaf_to_json(const Presheaf& f) {
  nlohmann::json j;
  j["space"] = fintop_to_json(f.space);
  j["sections"] = nlohmann::json::array();
  for (std::size_t v = 0; v < f.space.opens.size(); ++v)
    j["sections"].push_back({{"open", open_to_point_list(f.space, f.space.opens[v])},
                             {"count", f.sections[v]}});
  j["restrictions"] = nlohmann::json::array();
  for (const auto& [key, map] : f.res)
    j["restrictions"].push_back({{"to", open_to_point_list(f.space, f.space.opens[static_cast<std::size_t>(key.first)])},
                                 {"from", open_to_point_list(f.space, f.space.opens[static_cast<std::size_t>(key.second)])},
                                 {"map", map}});
  return j;
}

inline Presheaf presheaf_from_json(const nlohmann::json& j) {
  Presheaf f;
  f.space = fintop_from_json(j.at("space"));
  auto mask_of = [&](const nlohmann::json& pts) {
    std::uint32_t m = 0;
    for (const auto& p : pts) m |= (1u << p.get<int>());
    return m;
  };
  f.sections.assign(f.space.opens.size(), 0);
  for (const auto& s : j.at("sections"))
    f.sections[static_cast<std::size_t>(f.space.open_index(mask_of(s.at("open"))))] =
        s.at("count").get<int>();
  for (const auto& r : j.at("restrictions"))
    f.res[{f.space.open_index(mask_of(r.at("to"))), f.space.open_index(mask_of(r.at("from")))}] =
        r.at("map").get<std::vector<int>>();
  f.validate();
  return f;
}

// ---------------------------------------------------------------------------
// space catalog and presheaf generator
// ---------------------------------------------------------------------------
inline std::vector<FinTop> space_catalog() {
  std::vector<FinTop> out;
  out.push_back(FinTop::from_preorder("point", 1, {}));
  out.push_back(FinTop::from_preorder("disc2", 2, {}));
  out.push_back(FinTop::from_preorder("sierpinski", 2, {{1, 0}}));  // closed pt 1, open pt 0
  out.push_back(FinTop::from_preorder("disc3", 3, {}));
  out.push_back(FinTop::from_preorder("chain3", 3, {{0, 1}, {1, 2}}));
  out.push_back(FinTop::from_preorder("vee", 3, {{0, 1}, {0, 2}}));
  out.push_back(FinTop::from_preorder("wedge", 3, {{1, 0}, {2, 0}}));
  out.push_back(FinTop::from_preorder("pseudocircle", 4, {{2, 0}, {2, 1}, {3, 0}, {3, 1}}));
  out.push_back(FinTop::from_preorder("square", 4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  return out;
}

inline Presheaf random_presheaf(Rng& rng, const FinTop& space, int max_gens = 3) {
  switch (rng.next_below(3)) {
    case 0:
      return Presheaf::constant_singleton(space);
    case 1:
      return Presheaf::collapse_pair(space);
    default: {
      std::vector<std::uint32_t> gens;
      int k = 1 + static_cast<int>(rng.next_below(max_gens));
      for (int i = 0; i < k; ++i)
        gens.push_back(space.opens[rng.next_below(space.opens.size())]);
      return Presheaf::representable_sum(space, gens);
    }
  }
}

}  // namespace depsum
