#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// Generic axiom suites over the dependent-adder surface. An instance type A
// supplies, via duck typing:
//
//   Elem, Point, Fiber, Family
//   name(), commutative(), unit(), zero() -> optional<Elem>
//   fiber_of(x), const_family(fiber, c), eval(f, p), sum(x, f)
//   flatten(x, f, i, j), inner_family(x, f, g, i)    // (g∘f^♭) restricted over i
//   boxtimes(x, f, g)                                // f ⊠ g = Σ^f (g∘f^♭)
//   equal_elem(a, b), equal_point(p, q)
//   gen_elem(rng), gen_family(rng, fiber), sample_points(fiber, rng)
//   show_elem(e), show_point(p), show_family(f)
//
// Optional capabilities, detected below:
//   all_elems()                          exhaustive element catalog (small carriers)
//   Family2 + gen_family2 / swap2 / partial_sum_family / show_family2   (Fubini)
//   fubini_counterexample()              curated witness for non-commutative adders
//   custom_flatten_assoc(rng, out)       instance-specific flatten-associativity step
//   scale_family(y, f)                   pointwise left product, for distributivity

template <class A>
concept HasAllElems = requires(const A& a) { a.all_elems(); };

template <class A>
concept HasFamily2 = requires(const A& a, Rng& rng) {
  a.gen_family2(rng, a.fiber_of(a.unit()), a.fiber_of(a.unit()));
};

template <class A>
concept HasFubiniWitness = requires(const A& a) { a.fubini_counterexample(); };

template <class A>
concept HasCustomFlattenAssoc = requires(const A& a, Rng& rng, CheckResult& out) {
  a.custom_flatten_assoc(rng, out);
};

template <class A>
concept HasScaleFamily = requires(const A& a, const typename A::Elem& y,
                                  const typename A::Family& f) { a.scale_family(y, f); };

namespace detail {

// Picks the case element: exhaustive catalogs cycle, everything else draws.
template <class A>
typename A::Elem case_elem(const A& a, Rng& rng, std::uint64_t idx) {
  if constexpr (HasAllElems<A>) {
    auto all = a.all_elems();
    return all[idx % all.size()];
  } else {
    return a.gen_elem(rng);
  }
}

template <class A>
std::uint64_t effective_cases(const A& a, std::uint64_t cases, CheckResult& out) {
  if constexpr (HasAllElems<A>) {
    auto n = a.all_elems().size();
    if (n < cases) {
      out.note = "generator exhausted after " + std::to_string(n) + " distinct elements";
      return n;
    }
  }
  return cases;
}

}  // namespace detail

// Right Unit: Sum^x const_1 = x.
template <class A>
CheckResult check_right_unit(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "right-unit";
  cases = detail::effective_cases(a, cases, out);
  for (std::uint64_t k = 0; k < cases; ++k) {
    try {
      Rng rng = Rng::derive(seed, k);
      auto x = detail::case_elem(a, rng, k);
      auto fib = a.fiber_of(x);
      auto lhs = a.sum(x, a.const_family(fib, a.unit()));
      ++out.cases_run;
      if (!a.equal_elem(lhs, x))
        out.record(k, "x=" + a.show_elem(x), a.show_elem(lhs), a.show_elem(x));
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

// Left Unit: const_1 ⊠ f = f, compared pointwise on sampled fiber points.
template <class A>
CheckResult check_left_unit(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "left-unit";
  cases = detail::effective_cases(a, cases, out);
  for (std::uint64_t k = 0; k < cases; ++k) {
    try {
      Rng rng = Rng::derive(seed, k);
      auto x = detail::case_elem(a, rng, k);
      auto fib = a.fiber_of(x);
      auto f = a.gen_family(rng, fib);
      auto cu = a.const_family(fib, a.unit());
      auto composed = a.boxtimes(x, cu, f);
      ++out.cases_run;
      for (const auto& p : a.sample_points(fib, rng)) {
        auto lhs = a.eval(composed, p);
        auto rhs = a.eval(f, p);
        if (!a.equal_elem(lhs, rhs)) {
          out.record(k, "x=" + a.show_elem(x) + " f=" + a.show_family(f) + " at " + a.show_point(p),
                     a.show_elem(lhs), a.show_elem(rhs));
          break;
        }
      }
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

// Sum Associativity: Sum^{Sum^x f} g = Sum^x (f ⊠ g).
template <class A>
CheckResult check_sum_assoc(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "sum-assoc";
  cases = detail::effective_cases(a, cases, out);
  for (std::uint64_t k = 0; k < cases; ++k) {
    try {
      Rng rng = Rng::derive(seed, k);
      auto x = detail::case_elem(a, rng, k);
      auto f = a.gen_family(rng, a.fiber_of(x));
      auto y = a.sum(x, f);
      auto g = a.gen_family(rng, a.fiber_of(y));
      auto lhs = a.sum(y, g);
      auto rhs = a.sum(x, a.boxtimes(x, f, g));
      ++out.cases_run;
      if (!a.equal_elem(lhs, rhs))
        out.record(k, "x=" + a.show_elem(x) + " f=" + a.show_family(f) + " g=" + a.show_family(g),
                   a.show_elem(lhs), a.show_elem(rhs));
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

// Flatten Associativity: g^♭(f^♭(i,j), k) = (f⊠g)^♭(i, (g∘f^♭)^♭((i,j),k)),
// sampled over nested fiber points.
template <class A>
CheckResult check_flatten_assoc(const A& a, std::uint64_t cases, std::uint64_t sample_cap,
                                std::uint64_t seed) {
  CheckResult out;
  out.axiom = "flatten-assoc";
  if constexpr (HasCustomFlattenAssoc<A>) {
    for (std::uint64_t k = 0; k < cases; ++k) {
      try {
        Rng rng = Rng::derive(seed, k);
        a.custom_flatten_assoc(rng, out);
      } catch (const SkipCase&) {
        ++out.cases_skipped;
      }
    }
    return out;
  } else {
    cases = detail::effective_cases(a, cases, out);
    for (std::uint64_t k = 0; k < cases; ++k) {
      try {
        Rng rng = Rng::derive(seed, k);
        auto x = detail::case_elem(a, rng, k);
        auto f = a.gen_family(rng, a.fiber_of(x));
        auto y = a.sum(x, f);
        auto g = a.gen_family(rng, a.fiber_of(y));
        auto fg = a.boxtimes(x, f, g);
        ++out.cases_run;
        std::uint64_t sampled = 0;
        bool failed = false;
        for (const auto& i : a.sample_points(a.fiber_of(x), rng)) {
          if (failed || sampled >= sample_cap) break;
          auto fi = a.eval(f, i);
          auto inner = a.inner_family(x, f, g, i);
          for (const auto& j : a.sample_points(a.fiber_of(fi), rng)) {
            if (failed || sampled >= sample_cap) break;
            auto fb = a.flatten(x, f, i, j);
            auto gfb = a.eval(g, fb);
            for (const auto& kk : a.sample_points(a.fiber_of(gfb), rng)) {
              if (sampled >= sample_cap) break;
              ++sampled;
              auto route1 = a.flatten(y, g, fb, kk);
              auto m = a.flatten(fi, inner, j, kk);
              auto route2 = a.flatten(x, fg, i, m);
              if (!a.equal_point(route1, route2)) {
                out.record(k,
                           "x=" + a.show_elem(x) + " f=" + a.show_family(f) +
                               " g=" + a.show_family(g) + " at (" + a.show_point(i) + "," +
                               a.show_point(j) + "," + a.show_point(kk) + ")",
                           a.show_point(route1), a.show_point(route2));
                failed = true;
                break;
              }
            }
          }
        }
      } catch (const SkipCase&) {
        ++out.cases_skipped;
      }
    }
    return out;
  }
}

// Fubini: Sum^y Sum^x f = Sum^x Sum^y f∘switch for commutative adders; for
// non-commutative ones a curated counterexample must exist.
template <class A>
CheckResult check_fubini(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "fubini";
  if (!a.commutative()) {
    if constexpr (HasFubiniWitness<A>) {
      auto w = a.fubini_counterexample();
      out.cases_run = 1;
      if (a.equal_elem(w.lhs, w.rhs)) {
        out.record(0, w.description, a.show_elem(w.lhs), a.show_elem(w.rhs));
        out.note = "expected a Fubini counterexample, found equality";
      } else {
        out.note = "non-commutative: counterexample " + w.description + " gives " +
                   a.show_elem(w.lhs) + " vs " + a.show_elem(w.rhs);
      }
      return out;
    } else {
      out.note = "non-commutative instance without curated witness";
      out.record(0, "missing fubini_counterexample()", "", "");
      return out;
    }
  }
  if constexpr (HasFamily2<A>) {
    cases = detail::effective_cases(a, cases, out);
    for (std::uint64_t k = 0; k < cases; ++k) {
      try {
        Rng rng = Rng::derive(seed, k);
        auto x = detail::case_elem(a, rng, k);
        auto y = a.gen_elem(rng);
        auto f2 = a.gen_family2(rng, a.fiber_of(x), a.fiber_of(y));
        auto lhs = a.sum(y, a.partial_sum_family(x, f2));
        auto rhs = a.sum(x, a.partial_sum_family(y, a.swap2(f2)));
        ++out.cases_run;
        if (!a.equal_elem(lhs, rhs))
          out.record(k,
                     "x=" + a.show_elem(x) + " y=" + a.show_elem(y) + " f=" + a.show_family2(f2),
                     a.show_elem(lhs), a.show_elem(rhs));
      } catch (const SkipCase&) {
        ++out.cases_skipped;
      }
    }
  } else {
    out.note = "commutative instance without bivariate families; skipped";
  }
  return out;
}

// Zero object: Sum^x const_0 = 0 and Sum^0 f = 0.
template <class A>
CheckResult check_zero(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "zero";
  auto z = a.zero();
  if (!z) {
    out.note = "no zero object; skipped";
    return out;
  }
  cases = detail::effective_cases(a, cases, out);
  for (std::uint64_t k = 0; k < cases; ++k) {
    try {
      Rng rng = Rng::derive(seed, k);
      auto x = detail::case_elem(a, rng, k);
      auto s = a.sum(x, a.const_family(a.fiber_of(x), *z));
      ++out.cases_run;
      if (!a.equal_elem(s, *z)) {
        out.record(k, "clause1 x=" + a.show_elem(x), a.show_elem(s), a.show_elem(*z));
        continue;
      }
      auto zf = a.gen_family(rng, a.fiber_of(*z));
      auto s0 = a.sum(*z, zf);
      if (!a.equal_elem(s0, *z))
        out.record(k, "clause2 f=" + a.show_family(zf), a.show_elem(s0), a.show_elem(*z));
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

// Naturality over finite parameter sets: reindexing commutes with pointwise sums.
// reindex[u] is the index into the primed tuple that u pulls back from.
template <class A>
CheckResult check_naturality(const A& a, const std::vector<std::size_t>& reindex,
                             std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "naturality";
  std::size_t u_size = reindex.size();
  std::size_t uprime_size = 0;
  for (auto r : reindex) uprime_size = std::max(uprime_size, r + 1);
  for (std::uint64_t k = 0; k < cases; ++k) {
    try {
      Rng rng = Rng::derive(seed, k);
      std::vector<typename A::Elem> x;
      std::vector<typename A::Family> f;
      for (std::size_t u = 0; u < uprime_size; ++u) {
        x.push_back(detail::case_elem(a, rng, k + u));
        f.push_back(a.gen_family(rng, a.fiber_of(x.back())));
      }
      ++out.cases_run;
      // (Sum^x f) ∘ reindex: sum the whole primed tuple first, then pull back.
      std::vector<typename A::Elem> sums_primed;
      for (std::size_t u = 0; u < uprime_size; ++u) sums_primed.push_back(a.sum(x[u], f[u]));
      // Sum^{x∘reindex} (f ∘ (reindex ×_A id)): pull back first, then sum.
      for (std::size_t u = 0; u < u_size; ++u) {
        auto pulled_x = x[reindex[u]];
        auto pulled_f = f[reindex[u]];
        auto lhs = sums_primed[reindex[u]];
        auto rhs = a.sum(pulled_x, pulled_f);
        if (!a.equal_elem(lhs, rhs)) {
          out.record(k, "u=" + std::to_string(u) + " x=" + a.show_elem(x[reindex[u]]),
                     a.show_elem(lhs), a.show_elem(rhs));
          break;
        }
      }
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

// Derived binary product x·y := Sum^y const_x.
template <class A>
typename A::Elem product(const A& a, const typename A::Elem& x, const typename A::Elem& y) {
  auto fib = a.fiber_of(y);
  return a.sum(y, a.const_family(fib, x));
}

// Monoid laws of the derived product: unit laws, associativity, and
// commutativity when the instance claims it.
template <class A>
CheckResult check_monoid_laws(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "monoid-laws";
  cases = detail::effective_cases(a, cases, out);
  for (std::uint64_t k = 0; k < cases; ++k) {
    try {
      Rng rng = Rng::derive(seed, k);
      auto x = detail::case_elem(a, rng, k);
      auto y = a.gen_elem(rng);
      auto z = a.gen_elem(rng);
      ++out.cases_run;
      auto ux = product(a, a.unit(), x);
      auto xu = product(a, x, a.unit());
      if (!a.equal_elem(ux, x) || !a.equal_elem(xu, x)) {
        out.record(k, "unit law x=" + a.show_elem(x), a.show_elem(ux), a.show_elem(xu));
        continue;
      }
      auto lhs = product(a, x, product(a, y, z));
      auto rhs = product(a, product(a, x, y), z);
      if (!a.equal_elem(lhs, rhs)) {
        out.record(k,
                   "assoc x=" + a.show_elem(x) + " y=" + a.show_elem(y) + " z=" + a.show_elem(z),
                   a.show_elem(lhs), a.show_elem(rhs));
        continue;
      }
      if (a.commutative()) {
        auto xy = product(a, x, y);
        auto yx = product(a, y, x);
        if (!a.equal_elem(xy, yx))
          out.record(k, "comm x=" + a.show_elem(x) + " y=" + a.show_elem(y), a.show_elem(xy),
                     a.show_elem(yx));
      }
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

// Right distributivity y·Sum^x f = Sum^x y·f, which holds in every dependent adder.
template <class A>
  requires HasScaleFamily<A>
CheckResult check_right_distributivity(const A& a, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "right-distributivity";
  cases = detail::effective_cases(a, cases, out);
  for (std::uint64_t k = 0; k < cases; ++k) {
    try {
      Rng rng = Rng::derive(seed, k);
      auto x = detail::case_elem(a, rng, k);
      auto y = a.gen_elem(rng);
      auto f = a.gen_family(rng, a.fiber_of(x));
      auto lhs = product(a, y, a.sum(x, f));
      auto rhs = a.sum(x, a.scale_family(y, f));
      ++out.cases_run;
      if (!a.equal_elem(lhs, rhs))
        out.record(k, "x=" + a.show_elem(x) + " y=" + a.show_elem(y) + " f=" + a.show_family(f),
                   a.show_elem(lhs), a.show_elem(rhs));
    } catch (const SkipCase&) {
      ++out.cases_skipped;
    }
  }
  return out;
}

}  // namespace depsum
