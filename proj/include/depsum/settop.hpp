#pragma once

#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "depsum/fintop.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// The left Set-module structure on finite spaces: module elements are spaces,
// families over a space are presheaves, the sum of a presheaf is its étalé
// space, and the flattening data are the germ graphs ε(U, s).

// Φ : Et(G) → Et(F ⊠ G). A point of Et(G) is a germ t of G at a point (x, s)
// of Et(F); in the finite model the minimal open of (x, s) is exactly
// ε(umin(x), s), so (s, t) is literally a germ of F ⊠ G at x.
struct ReassociationMap {
  std::vector<int> fn;  // Et(G) point → Et(F⊠G) point
};

inline ReassociationMap build_phi(const Presheaf& f, const EtaleSpace& etf,
                                  const EtaleSpace& etg, const BoxtimesPresheaf& fg,
                                  const EtaleSpace& etfg) {
  ReassociationMap phi;
  for (const auto& [p, t] : etg.point_of) {
    auto [x, s] = etf.point_of[static_cast<std::size_t>(p)];
    int umin_x = f.space.open_index(f.space.umin(x));
    // find the pair (s, t) in the stalk of F ⊠ G at x
    const auto& pairs = fg.pairs[static_cast<std::size_t>(umin_x)];
    int germ = -1;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx)
      if (pairs[idx] == std::pair{s, t}) germ = static_cast<int>(idx);
    if (germ < 0) throw std::logic_error("phi: missing pair germ");
    phi.fn.push_back(etfg.point_index.at({x, germ}));
  }
  return phi;
}

inline std::uint32_t map_mask(const std::vector<int>& fn, std::uint32_t mask) {
  std::uint32_t out = 0;
  for (std::size_t p = 0; p < fn.size(); ++p)
    if (mask & (1u << p)) out |= (1u << fn[p]);
  return out;
}

// Unit, sum associativity (Φ a homeomorphism plus the ε-image identity),
// stalk decomposition, and the object-level flatten associativity, which in
// the pre-order of opens is the ε-image identity itself.
inline CheckResult left_set_module_suite(std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "left-set-module";
  auto spaces = space_catalog();
  for (std::uint64_t kk = 0; kk < cases; ++kk) {
    Rng rng = Rng::derive(seed, kk);
    const FinTop& X = spaces[rng.next_below(spaces.size())];
    try {
      ++out.cases_run;

      // unit: the constant singleton presheaf has Et(F) ≅ X through the
      // projection itself
      {
        Presheaf one = Presheaf::constant_singleton(X);
        EtaleSpace et1 = etale(one);
        OpenMap proj = et1.projection();
        proj.validate();
        bool bijective = et1.space.n_points == X.n_points;
        std::vector<bool> hit(static_cast<std::size_t>(X.n_points), false);
        for (int v : proj.fn) hit[static_cast<std::size_t>(v)] = true;
        for (bool h : hit) bijective = bijective && h;
        if (!bijective || !fintop_iso(et1.space, X)) {
          out.record(kk, "unit on " + X.name, std::to_string(et1.space.n_points),
                     std::to_string(X.n_points));
          continue;
        }
      }

      Presheaf f = random_presheaf(rng, X);
      f.validate();
      EtaleSpace etf = etale(f);
      if (etf.space.opens.size() > 256) throw SkipCase("etale opens beyond suite budget");
      // the projection is continuous and open
      etf.projection().validate();

      Presheaf g = random_presheaf(rng, etf.space, 2);
      g.validate();
      EtaleSpace etg = etale(g);

      BoxtimesPresheaf fg = boxtimes_presheaf(f, etf, g);
      EtaleSpace etfg = etale(fg.sheaf);

      // stalk decomposition: |(F ⊠ G)_x| = Σ_{s ∈ F_x} |G_{(x,s)}|
      for (int x = 0; x < X.n_points; ++x) {
        int lhs = stalk_size(fg.sheaf, x);
        int rhs = 0;
        for (int s = 0; s < stalk_size(f, x); ++s)
          rhs += stalk_size(g, etf.point_index.at({x, s}));
        if (lhs != rhs) {
          out.record(kk, "stalk decomposition at x=" + std::to_string(x) + " on " + X.name,
                     std::to_string(lhs), std::to_string(rhs));
          break;
        }
      }

      // Φ is a bijection and a homeomorphism
      ReassociationMap phi = build_phi(f, etf, etg, fg, etfg);
      if (etg.space.n_points != etfg.space.n_points) {
        out.record(kk, "Φ size mismatch on " + X.name, std::to_string(etg.space.n_points),
                   std::to_string(etfg.space.n_points));
        continue;
      }
      std::vector<bool> hit(static_cast<std::size_t>(etfg.space.n_points), false);
      bool inj = true;
      for (int v : phi.fn) {
        if (hit[static_cast<std::size_t>(v)]) inj = false;
        hit[static_cast<std::size_t>(v)] = true;
      }
      if (!inj) {
        out.record(kk, "Φ not injective on " + X.name, "", "");
        continue;
      }
      bool opens_match = true;
      for (std::uint32_t u : etg.space.opens)
        if (!etfg.space.is_up_closed(map_mask(phi.fn, u))) opens_match = false;
      std::vector<int> inv(phi.fn.size());
      for (std::size_t p = 0; p < phi.fn.size(); ++p)
        inv[static_cast<std::size_t>(phi.fn[p])] = static_cast<int>(p);
      for (std::uint32_t u : etfg.space.opens)
        if (!etg.space.is_up_closed(map_mask(inv, u))) opens_match = false;
      if (!opens_match) {
        out.record(kk, "Φ not a homeomorphism on " + X.name, "", "");
        continue;
      }

      // ε-image identity (also the object-level flatten associativity):
      // ε_{F⊠G}(U, (s,t)) = Φ(ε_G(ε_F(U, s), t)) for all U, s, t
      bool eps_ok = true;
      for (std::size_t u = 0; u < X.opens.size() && eps_ok; ++u)
        for (int s = 0; s < f.count(static_cast<int>(u)) && eps_ok; ++s) {
          std::uint32_t epsf = etf.eps_mask(static_cast<int>(u), s);
          int epsf_idx = etf.space.open_index(epsf);
          for (int t = 0; t < g.count(epsf_idx) && eps_ok; ++t) {
            // locate (s, t) among the pair sections over U
            const auto& pairs = fg.pairs[u];
            int pair_idx = -1;
            for (std::size_t idx = 0; idx < pairs.size(); ++idx)
              if (pairs[idx] == std::pair{s, t}) pair_idx = static_cast<int>(idx);
            std::uint32_t lhs = etfg.eps_mask(static_cast<int>(u), pair_idx);
            std::uint32_t rhs = map_mask(phi.fn, etg.eps_mask(epsf_idx, t));
            if (lhs != rhs) {
              out.record(kk, "ε identity on " + X.name + " U=" + std::to_string(X.opens[u]),
                         std::to_string(lhs), std::to_string(rhs));
              eps_ok = false;
            }
          }
        }
    } catch (const SkipCase&) {
      ++out.cases_skipped;
      --out.cases_run;
    }
  }
  return out;
}

// ε is monotone: V ⊆ U and t = s|_V give ε(V, t) ⊆ ε(U, s).
inline CheckResult check_eps_monotone(std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "eps-monotone";
  auto spaces = space_catalog();
  for (std::uint64_t kk = 0; kk < cases; ++kk) {
    Rng rng = Rng::derive(seed, kk);
    const FinTop& X = spaces[rng.next_below(spaces.size())];
    try {
      Presheaf f = random_presheaf(rng, X);
      EtaleSpace et = etale(f);
      ++out.cases_run;
      for (std::size_t u = 0; u < X.opens.size(); ++u)
        for (std::size_t v = 0; v < X.opens.size(); ++v) {
          if ((X.opens[v] & X.opens[u]) != X.opens[v]) continue;
          for (int s = 0; s < f.count(static_cast<int>(u)); ++s) {
            int t = f.restrict_section(static_cast<int>(v), static_cast<int>(u), s);
            std::uint32_t ev = et.eps_mask(static_cast<int>(v), t);
            std::uint32_t eu = et.eps_mask(static_cast<int>(u), s);
            if ((ev & eu) != ev)
              out.record(kk, "on " + X.name, std::to_string(ev), std::to_string(eu));
          }
        }
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

}  // namespace depsum
