#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depsum/adder.hpp"
#include "depsum/check.hpp"
#include "depsum/discrete.hpp"

namespace depsum {

// A-fibration x → y: a family over the fiber of y whose sum is x. Composition
// is ⊠; identities are constant-unit families.
template <class A>
struct Fibration {
  typename A::Elem codom;   // y
  typename A::Family fam;   // f with Sum^y f = x
  typename A::Elem dom;     // x, cached
};

template <class A>
Fibration<A> fib_identity(const A& a, const typename A::Elem& x) {
  auto f = a.const_family(a.fiber_of(x), a.unit());
  return Fibration<A>{x, f, a.sum(x, f)};
}

// f : y → z and g : x → y compose to f ⊠ g : x → z.
template <class A>
Fibration<A> fib_compose(const A& a, const Fibration<A>& f, const Fibration<A>& g) {
  if (!a.equal_elem(f.dom, g.codom)) throw std::invalid_argument("fib_compose: domain mismatch");
  auto h = a.boxtimes(f.codom, f.fam, g.fam);
  return Fibration<A>{f.codom, h, a.sum(f.codom, h)};
}

template <class A>
bool fib_equal(const A& a, const Fibration<A>& p, const Fibration<A>& q, Rng& rng) {
  if (!a.equal_elem(p.codom, q.codom) || !a.equal_elem(p.dom, q.dom)) return false;
  for (const auto& pt : a.sample_points(a.fiber_of(p.codom), rng))
    if (!a.equal_elem(a.eval(p.fam, pt), a.eval(q.fam, pt))) return false;
  return true;
}

template <class A>
concept HasSmallFamilyGen = requires(const A& a, Rng& rng) {
  a.gen_family_small(rng, a.fiber_of(a.unit()));
};

template <class A>
typename A::Family gen_family_for_composition(const A& a, Rng& rng,
                                              const typename A::Fiber& fib) {
  if constexpr (HasSmallFamilyGen<A>) {
    return a.gen_family_small(rng, fib);
  } else {
    return a.gen_family(rng, fib);
  }
}

// Category laws of Fib(A) on generated fibrations.
template <class A>
CheckResult check_fib_category(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "fib-category";
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    auto z = a.gen_elem(rng);
    auto ffam = gen_family_for_composition(a, rng, a.fiber_of(z));
    Fibration<A> f{z, ffam, a.sum(z, ffam)};  // f : y → z
    auto gfam = gen_family_for_composition(a, rng, a.fiber_of(f.dom));
    Fibration<A> g{f.dom, gfam, a.sum(f.dom, gfam)};  // g : x → y
    auto hfam = gen_family_for_composition(a, rng, a.fiber_of(g.dom));
    Fibration<A> h{g.dom, hfam, a.sum(g.dom, hfam)};  // h : w → x
    ++out.cases_run;

    auto idz = fib_identity(a, z);
    if (!fib_equal(a, fib_compose(a, idz, f), f, rng) ||
        !fib_equal(a, fib_compose(a, f, fib_identity(a, f.dom)), f, rng)) {
      out.record(k, "unit laws at f=" + a.show_family(f.fam), "", "");
      continue;
    }
    auto left = fib_compose(a, fib_compose(a, f, g), h);
    auto right = fib_compose(a, f, fib_compose(a, g, h));
    if (!fib_equal(a, left, right, rng))
      out.record(k,
                 "assoc f=" + a.show_family(f.fam) + " g=" + a.show_family(g.fam) +
                     " h=" + a.show_family(h.fam),
                 a.show_family(left.fam), a.show_family(right.fam));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The FinSet ↪ Fib(ℕ) bridge: Φ(f)(x) = |f^{-1}(x)|.
// ---------------------------------------------------------------------------

// f maps [n] → [m]; entries are 1-based targets.
struct FinSetFn {
  int domain_size = 0;
  int codomain_size = 0;
  std::vector<int> map;  // size domain_size, values in 1..codomain_size
};

inline FinSetFn finset_compose(const FinSetFn& g, const FinSetFn& f) {
  if (f.codomain_size != g.domain_size) throw std::invalid_argument("finset_compose: mismatch");
  FinSetFn r{f.domain_size, g.codomain_size, {}};
  r.map.reserve(f.map.size());
  for (int v : f.map) r.map.push_back(g.map[static_cast<std::size_t>(v - 1)]);
  return r;
}

inline Fibration<NatAdder> phi_finset(const FinSetFn& f) {
  NatAdder nat;
  NatAdder::Family fam;
  fam.table.assign(static_cast<std::size_t>(f.codomain_size), 0);
  for (int v : f.map) ++fam.table[static_cast<std::size_t>(v - 1)];
  return Fibration<NatAdder>{f.codomain_size, fam, nat.sum(f.codomain_size, fam)};
}

inline FinSetFn random_finset_fn(Rng& rng, int max_size) {
  FinSetFn f;
  f.domain_size = static_cast<int>(rng.next_below(max_size + 1));
  f.codomain_size = 1 + static_cast<int>(rng.next_below(max_size));
  for (int i = 0; i < f.domain_size; ++i)
    f.map.push_back(1 + static_cast<int>(rng.next_below(f.codomain_size)));
  return f;
}

// Φ(g∘f) = Φ(g) ⊠ Φ(f), exactly, on random composable pairs. The fiber-count
// family only remembers sizes and flatten walks consecutive blocks, so the law
// requires the outer map's preimages to be consecutive: g is kept monotone.
inline CheckResult check_phi_functorial(std::uint64_t cases, std::uint64_t seed,
                                        int max_size = 6) {
  NatAdder nat;
  CheckResult out;
  out.axiom = "phi-functorial";
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    FinSetFn f = random_finset_fn(rng, max_size);
    FinSetFn g;
    g.domain_size = f.codomain_size;
    g.codomain_size = 1 + static_cast<int>(rng.next_below(max_size));
    for (int i = 0; i < g.domain_size; ++i)
      g.map.push_back(1 + static_cast<int>(rng.next_below(g.codomain_size)));
    std::sort(g.map.begin(), g.map.end());
    ++out.cases_run;

    auto lhs = phi_finset(finset_compose(g, f));
    auto rhs = fib_compose(nat, phi_finset(g), phi_finset(f));
    if (!(lhs.fam.table == rhs.fam.table && lhs.dom == rhs.dom && lhs.codom == rhs.codom)) {
      out.record(k, "f:[" + std::to_string(f.domain_size) + "]→[" +
                        std::to_string(f.codomain_size) + "], g:[" +
                        std::to_string(g.domain_size) + "]→[" +
                        std::to_string(g.codomain_size) + "]",
                 nat.show_family(lhs.fam), nat.show_family(rhs.fam));
    }
  }
  return out;
}

}  // namespace depsum
