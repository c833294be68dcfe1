#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "depsum/continuous.hpp"
#include "depsum/discrete.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// ---------------------------------------------------------------------------
// Generic right-module checks. A right module over a base adder supplies:
//   Base, base(), MElem, MFamily
//   msum(x, f), meval(f, p), const_mfamily(fiber, m), mfamily_from_fn(fiber, fn)
//   gen_melem(rng), gen_mfamily(rng, fiber), mequal(a, b), show_melem(m)
// ---------------------------------------------------------------------------

// Unit: the sum of the constant-m family over the unit fiber is m.
// Sum associativity: Sum^{Sum^x f} g = Sum^x (f ⊠ g) with the inner sums in M.
template <class M>
CheckResult check_right_module(const M& mod, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "right-module";
  const auto& a = mod.base();
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    ++out.cases_run;

    auto m = mod.gen_melem(rng);
    auto unit_fiber = a.fiber_of(a.unit());
    auto mu = mod.msum(a.unit(), mod.const_mfamily(unit_fiber, m));
    if (!mod.mequal(mu, m)) {
      out.record(k, "unit m=" + mod.show_melem(m), mod.show_melem(mu), mod.show_melem(m));
      continue;
    }

    auto x = a.gen_elem(rng);
    auto f = a.gen_family(rng, a.fiber_of(x));
    auto y = a.sum(x, f);
    auto g = mod.gen_mfamily(rng, a.fiber_of(y));
    auto lhs = mod.msum(y, g);
    // (f ⊠ g)(i) = Sum_M^{f(i)} (j ↦ g(f^♭(i,j)))
    auto fg = mod.mfamily_from_fn(a.fiber_of(x), [&](const typename M::Base::Point& i) {
      auto fi = a.eval(f, i);
      auto inner = mod.mfamily_from_fn(a.fiber_of(fi), [&](const typename M::Base::Point& j) {
        return mod.meval(g, a.flatten(x, f, i, j));
      });
      return mod.msum(fi, inner);
    });
    auto rhs = mod.msum(x, fg);
    if (!mod.mequal(lhs, rhs))
      out.record(k, "sum-assoc x=" + a.show_elem(x) + " f=" + a.show_family(f),
                 mod.show_melem(lhs), mod.show_melem(rhs));
  }
  return out;
}

// phi is A-linear when phi(Sum^x f) = Sum^x (phi ∘ f).
template <class M, class N, class Phi>
CheckResult check_linear_map(Phi&& phi, const M& m, const N& n, std::uint64_t cases,
                             std::uint64_t seed) {
  CheckResult out;
  out.axiom = "linear-map";
  const auto& a = m.base();
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    auto x = a.gen_elem(rng);
    auto f = m.gen_mfamily(rng, a.fiber_of(x));
    auto lhs = phi(m.msum(x, f));
    auto nf = n.mfamily_from_fn(a.fiber_of(x), [&](const typename M::Base::Point& p) {
      return phi(m.meval(f, p));
    });
    auto rhs = n.msum(x, nf);
    ++out.cases_run;
    if (!n.mequal(lhs, rhs))
      out.record(k, "x=" + a.show_elem(x), n.show_melem(lhs), n.show_melem(rhs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic left-module checks. A left module supplies:
//   Base, base(), MElem, MPoint (= fiber points of the module carrier)
//   mfiber_of(m), afamily evaluation/generation over module fibers, lsum,
//   lflatten, lsample_points, lequal, gen_melem, show functions.
// ---------------------------------------------------------------------------
template <class L>
CheckResult check_left_module(const L& mod, std::uint64_t cases, std::uint64_t seed) {
  CheckResult out;
  out.axiom = "left-module";
  const auto& a = mod.base();
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    ++out.cases_run;

    auto m = mod.gen_melem(rng);
    auto mf = mod.mfiber_of(m);
    // Unit: Sum^m const_1 = m
    auto u = mod.lsum(m, mod.const_afamily(mf, a.unit()));
    if (!mod.lequal(u, m)) {
      out.record(k, "unit m=" + mod.show_melem(m), mod.show_melem(u), mod.show_melem(m));
      continue;
    }

    // Sum associativity: Sum^{Sum^m f} g = Sum^m (f ⊠ g)
    auto f = mod.gen_afamily(rng, mf);
    auto m2 = mod.lsum(m, f);
    auto g = mod.gen_afamily(rng, mod.mfiber_of(m2));
    auto lhs = mod.lsum(m2, g);
    auto fg = mod.lboxtimes(m, f, g);
    auto rhs = mod.lsum(m, fg);
    if (!mod.lequal(lhs, rhs)) {
      out.record(k, "sum-assoc m=" + mod.show_melem(m), mod.show_melem(lhs),
                 mod.show_melem(rhs));
      continue;
    }

    // Flatten associativity, sampled: g^{M,♭}(f^{M,♭}(i,j), k) against
    // (f⊠g)^{M,♭}(i, flatten_A(f(i), (g∘f^{M,♭})|_i, (j,k)))
    bool bad = false;
    int outer_budget = 2;
    for (const auto& i : mod.lsample_points(mf, rng)) {
      if (bad || outer_budget-- <= 0) break;
      auto fi = mod.aeval(f, i);
      auto inner = mod.inner_afamily(m, f, g, i);
      int mid_budget = 2;
      for (const auto& j : a.sample_points(a.fiber_of(fi), rng)) {
        if (bad || mid_budget-- <= 0) break;
        auto fb = mod.lflatten(m, f, i, j);
        auto gfb = mod.aeval(g, fb);
        int leaf_budget = 2;
        for (const auto& kk : a.sample_points(a.fiber_of(gfb), rng)) {
          if (leaf_budget-- <= 0) break;
          auto route1 = mod.lflatten(m2, g, fb, kk);
          auto lambda = a.flatten(fi, inner, j, kk);
          auto route2 = mod.lflatten(m, fg, i, lambda);
          if (!mod.lpoint_equal(route1, route2)) {
            out.record(k, "flatten-assoc at " + mod.show_mpoint(i),
                       mod.show_mpoint(route1), mod.show_mpoint(route2));
            bad = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Euclidean space R^n as a right module over the real-line adder, with
// componentwise integrals as sums.
// ---------------------------------------------------------------------------
class EuclideanModule {
public:
  using Base = RealAdder;
  using Vec = std::vector<double>;
  using MElem = Vec;
  struct MFamily {
    std::function<Vec(double)> fn;
    std::string desc;
  };

  EuclideanModule(int dim, double tol = 1e-6)
      : dim_(dim), tol_(tol), base_(RealCarrier::AllReal, tol) {}

  const Base& base() const { return base_; }
  int dim() const { return dim_; }

  MElem msum(const double& x, const MFamily& f) const {
    Vec out(static_cast<std::size_t>(dim_), 0.0);
    for (int c = 0; c < dim_; ++c)
      out[static_cast<std::size_t>(c)] = integrate(
          [&](double t) { return f.fn(t)[static_cast<std::size_t>(c)]; }, 0.0, x, spec_);
    return out;
  }
  MElem meval(const MFamily& f, const double& t) const { return f.fn(t); }
  MFamily const_mfamily(const Base::Fiber&, const MElem& m) const {
    return MFamily{[m](double) { return m; }, "const"};
  }
  template <class Fn>
  MFamily mfamily_from_fn(const Base::Fiber&, Fn&& fn) const {
    return MFamily{[fn](double t) { return fn(t); }, "derived"};
  }
  MElem gen_melem(Rng& rng) const {
    Vec v(static_cast<std::size_t>(dim_));
    for (auto& c : v) c = rng.next_real(-2.0, 2.0);
    return v;
  }
  MFamily gen_mfamily(Rng& rng, const Base::Fiber&) const {
    std::vector<AnalyticFamily> comps;
    for (int c = 0; c < dim_; ++c) comps.push_back(AnalyticFamily::random(rng, 0.8));
    int d = dim_;
    return MFamily{[comps, d](double t) {
                     Vec v(static_cast<std::size_t>(d));
                     for (int c = 0; c < d; ++c)
                       v[static_cast<std::size_t>(c)] = comps[static_cast<std::size_t>(c)].eval(t);
                     return v;
                   },
                   "componentwise analytic"};
  }
  bool mequal(const MElem& a, const MElem& b) const {
    for (std::size_t c = 0; c < a.size(); ++c)
      if (std::abs(a[c] - b[c]) > tol_) return false;
    return true;
  }
  std::string show_melem(const MElem& m) const {
    std::string s = "(";
    for (std::size_t c = 0; c < m.size(); ++c) s += (c ? ", " : "") + std::to_string(m[c]);
    return s + ")";
  }

private:
  int dim_;
  double tol_;
  Base base_;
  QuadratureSpec spec_;
};

inline std::vector<double> vector_module_sum(double x,
                                             const std::function<std::vector<double>(double)>& f,
                                             int dim) {
  EuclideanModule mod(dim);
  return mod.msum(x, EuclideanModule::MFamily{f, "adhoc"});
}

// ---------------------------------------------------------------------------
// Monoids as right modules over the naturals: folds as sums.
// ---------------------------------------------------------------------------
struct FiniteMonoid {
  std::string name;
  int size = 0;
  int identity = 0;
  std::vector<std::vector<int>> op;  // op[a][b]

  int mul(int a, int b) const { return op[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

  void validate() const {
    for (int a = 0; a < size; ++a) {
      if (mul(identity, a) != a || mul(a, identity) != a)
        throw std::logic_error(name + ": identity fails");
      for (int b = 0; b < size; ++b)
        for (int c = 0; c < size; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::logic_error(name + ": associativity fails");
    }
  }
};

class MonoidModule {
public:
  using Base = NatAdder;
  using MElem = int;
  struct MFamily {
    std::vector<int> table;
  };

  explicit MonoidModule(FiniteMonoid monoid) : monoid_(std::move(monoid)) {
    monoid_.validate();
  }

  const Base& base() const { return base_; }
  const FiniteMonoid& monoid() const { return monoid_; }

  MElem msum(const std::int64_t& x, const MFamily& f) const {
    if (static_cast<std::int64_t>(f.table.size()) != x)
      throw std::invalid_argument("monoid module: family length");
    int acc = monoid_.identity;
    for (int v : f.table) acc = monoid_.mul(acc, v);
    return acc;
  }
  MElem meval(const MFamily& f, const std::int64_t& i) const {
    return f.table[static_cast<std::size_t>(i - 1)];
  }
  MFamily const_mfamily(const Base::Fiber& n, const MElem& m) const {
    return MFamily{std::vector<int>(static_cast<std::size_t>(n), m)};
  }
  template <class Fn>
  MFamily mfamily_from_fn(const Base::Fiber& n, Fn&& fn) const {
    MFamily f;
    for (std::int64_t i = 1; i <= n; ++i) f.table.push_back(fn(i));
    return f;
  }
  MElem gen_melem(Rng& rng) const { return static_cast<int>(rng.next_below(monoid_.size)); }
  MFamily gen_mfamily(Rng& rng, const Base::Fiber& n) const {
    MFamily f;
    for (std::int64_t i = 0; i < n; ++i) f.table.push_back(gen_melem(rng));
    return f;
  }
  bool mequal(const MElem& a, const MElem& b) const { return a == b; }
  std::string show_melem(const MElem& m) const { return std::to_string(m); }

  // reconstruction: unit from the empty sum, product from two-element families
  FiniteMonoid rebuild_monoid() const {
    FiniteMonoid out;
    out.name = monoid_.name + " (rebuilt)";
    out.size = monoid_.size;
    out.identity = msum(0, MFamily{});
    out.op.assign(static_cast<std::size_t>(out.size),
                  std::vector<int>(static_cast<std::size_t>(out.size), 0));
    for (int a = 0; a < out.size; ++a)
      for (int b = 0; b < out.size; ++b)
        out.op[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            msum(2, MFamily{{a, b}});
    return out;
  }

private:
  FiniteMonoid monoid_;
  Base base_;
};

// Catalog of small monoids for the round-trip theorem at desk scale.
std::vector<FiniteMonoid> monoid_catalog();

// (N, +) as a right N-module, for the linear-map examples.
class NatPlusModule {
public:
  using Base = NatAdder;
  using MElem = std::int64_t;
  struct MFamily {
    std::vector<std::int64_t> table;
  };

  const Base& base() const { return base_; }
  MElem msum(const std::int64_t& x, const MFamily& f) const {
    if (static_cast<std::int64_t>(f.table.size()) != x)
      throw std::invalid_argument("nat module: family length");
    std::int64_t acc = 0;
    for (auto v : f.table) acc += v;
    return acc;
  }
  MElem meval(const MFamily& f, const std::int64_t& i) const {
    return f.table[static_cast<std::size_t>(i - 1)];
  }
  MFamily const_mfamily(const Base::Fiber& n, const MElem& m) const {
    return MFamily{std::vector<std::int64_t>(static_cast<std::size_t>(n), m)};
  }
  template <class Fn>
  MFamily mfamily_from_fn(const Base::Fiber& n, Fn&& fn) const {
    MFamily f;
    for (std::int64_t i = 1; i <= n; ++i) f.table.push_back(fn(i));
    return f;
  }
  MElem gen_melem(Rng& rng) const { return rng.next_int(0, 9); }
  MFamily gen_mfamily(Rng& rng, const Base::Fiber& n) const {
    MFamily f;
    for (std::int64_t i = 0; i < n; ++i) f.table.push_back(gen_melem(rng));
    return f;
  }
  bool mequal(const MElem& a, const MElem& b) const { return a == b; }
  std::string show_melem(const MElem& m) const { return std::to_string(m); }

private:
  Base base_;
};

// Pointed sets as right F1-modules: the empty sum is the basepoint.
class PointedSetModule {
public:
  using Base = F1Adder;
  using MElem = int;  // 0 is the basepoint
  struct MFamily {
    std::vector<int> table;  // length 0 or 1
  };

  explicit PointedSetModule(int size) : size_(size) {}

  const Base& base() const { return base_; }
  MElem msum(const int& x, const MFamily& f) const {
    if (static_cast<int>(f.table.size()) != x)
      throw std::invalid_argument("pointed set: family length");
    return x == 0 ? 0 : f.table[0];
  }
  MElem meval(const MFamily& f, const int&) const { return f.table.at(0); }
  MFamily const_mfamily(const Base::Fiber& n, const MElem& m) const {
    return n == 0 ? MFamily{} : MFamily{{m}};
  }
  template <class Fn>
  MFamily mfamily_from_fn(const Base::Fiber& n, Fn&& fn) const {
    return n == 0 ? MFamily{} : MFamily{{fn(1)}};
  }
  MElem gen_melem(Rng& rng) const { return static_cast<int>(rng.next_below(size_)); }
  MFamily gen_mfamily(Rng& rng, const Base::Fiber& n) const {
    return n == 0 ? MFamily{} : MFamily{{gen_melem(rng)}};
  }
  bool mequal(const MElem& a, const MElem& b) const { return a == b; }
  std::string show_melem(const MElem& m) const { return std::to_string(m); }

private:
  int size_;
  Base base_;
};

// ---------------------------------------------------------------------------
// [0, n] as a left module over the [0,1] adder: module elements m in [0, n],
// families map [0, m] into [0, 1], and the sum ∫_0^m f stays in [0, n].
// ---------------------------------------------------------------------------
class IntervalLeftModule {
public:
  using Base = RealAdder;
  using MElem = double;
  using MPoint = double;
  using MFiber = RealAdder::Fiber;
  using AFamily = RealAdder::Family;

  explicit IntervalLeftModule(double n, double tol = 1e-6)
      : n_(n), tol_(tol), base_(RealCarrier::UnitInterval, tol) {}

  const Base& base() const { return base_; }
  double bound() const { return n_; }

  MFiber mfiber_of(const MElem& m) const { return MFiber{0.0, m}; }
  AFamily const_afamily(const MFiber&, const double& c) const {
    return AFamily{[c](double) { return c; }, "const " + std::to_string(c)};
  }
  double aeval(const AFamily& f, const MPoint& t) const { return f.fn(t); }
  MElem lsum(const MElem& m, const AFamily& f) const {
    if (m < -tol_ || m > n_ + tol_) throw std::out_of_range("interval module: m outside [0,n]");
    return integrate(f.fn, 0.0, m, spec_);
  }
  MPoint lflatten(const MElem&, const AFamily& f, const MPoint& a, const double&) const {
    return integrate(f.fn, 0.0, a, spec_);
  }
  AFamily inner_afamily(const MElem& m, const AFamily& f, const AFamily& g,
                        const MPoint& a) const {
    double v = g.fn(lflatten(m, f, a, 0.0));
    return AFamily{[v](double) { return v; }, "const " + std::to_string(v)};
  }
  AFamily lboxtimes(const MElem&, const AFamily& f, const AFamily& g) const {
    auto ffn = f.fn;
    auto gfn = g.fn;
    QuadratureSpec spec = spec_;
    return AFamily{[ffn, gfn, spec](double a) {
                     return ffn(a) * gfn(integrate(ffn, 0.0, a, spec));
                   },
                   "(" + f.desc + ") ⊠ (" + g.desc + ")"};
  }
  AFamily gen_afamily(Rng& rng, const MFiber& fib) const {
    // range must stay within [0, 1]
    for (int attempt = 0; attempt < 32; ++attempt) {
      AnalyticFamily af = AnalyticFamily::random(rng, 0.3);
      af.terms.push_back(AnalyticTerm{AnalyticTerm::Kind::Monomial, 0.0, 0.5});
      bool ok = true;
      for (int i = 0; i <= 64 && ok; ++i) {
        double t = fib.lo + (fib.hi - fib.lo) * i / 64.0;
        double v = af.eval(t);
        ok = v >= 0.0 && v <= 1.0;
      }
      if (ok) return AFamily{[af](double t) { return af.eval(t); }, af.describe()};
    }
    return const_afamily(fib, 0.5);
  }
  MElem gen_melem(Rng& rng) const { return rng.next_real(0.0, n_); }
  std::vector<MPoint> lsample_points(const MFiber& fib, Rng&) const {
    std::vector<MPoint> ps;
    for (int i = 0; i <= 8; ++i) ps.push_back(fib.lo + (fib.hi - fib.lo) * i / 8.0);
    return ps;
  }
  bool lequal(const MElem& a, const MElem& b) const { return std::abs(a - b) <= tol_; }
  bool lpoint_equal(const MPoint& a, const MPoint& b) const { return std::abs(a - b) <= tol_; }
  std::string show_melem(const MElem& m) const { return std::to_string(m); }
  std::string show_mpoint(const MPoint& p) const { return std::to_string(p); }

private:
  double n_;
  double tol_;
  Base base_;
  QuadratureSpec spec_;
};

inline double interval_left_module_sum(double m, const std::function<double(double)>& f,
                                       double n) {
  IntervalLeftModule mod(n);
  return mod.lsum(m, IntervalLeftModule::AFamily{f, "adhoc"});
}

// ---------------------------------------------------------------------------
// monoid catalog
// ---------------------------------------------------------------------------
inline std::vector<FiniteMonoid> monoid_catalog() {
  std::vector<FiniteMonoid> out;
  auto make = [](std::string name, int size, int id, std::function<int(int, int)> f) {
    FiniteMonoid m;
    m.name = std::move(name);
    m.size = size;
    m.identity = id;
    m.op.assign(static_cast<std::size_t>(size), std::vector<int>(static_cast<std::size_t>(size)));
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b)
        m.op[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = f(a, b);
    m.validate();
    return m;
  };
  // cyclic groups Z/n
  for (int n = 2; n <= 8; ++n)
    out.push_back(make("Z/" + std::to_string(n), n, 0, [n](int a, int b) { return (a + b) % n; }));
  // multiplicative monoids ({0..n-1}, * mod n)
  for (int n = 2; n <= 6; ++n)
    out.push_back(
        make("mul mod " + std::to_string(n), n, 1 % n, [n](int a, int b) { return (a * b) % n; }));
  // min/max chains
  for (int n = 2; n <= 4; ++n) {
    out.push_back(make("min chain " + std::to_string(n), n, n - 1,
                       [](int a, int b) { return std::min(a, b); }));
    out.push_back(
        make("max chain " + std::to_string(n), n, 0, [](int a, int b) { return std::max(a, b); }));
  }
  // Z/2 x Z/2
  out.push_back(make("Z/2 x Z/2", 4, 0, [](int a, int b) { return (a ^ b); }));
  // full transformation monoid on 2 points: f encoded as bits (f(0), f(1)),
  // so the identity function is 0b10 = 2
  {
    FiniteMonoid t2;
    t2.name = "T_2";
    t2.size = 4;
    t2.identity = 2;
    t2.op.assign(4, std::vector<int>(4));
    auto apply = [](int f, int x) { return (f >> x) & 1; };
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        t2.op[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            apply(a, apply(b, 0)) | (apply(a, apply(b, 1)) << 1);
    t2.validate();
    out.push_back(t2);
  }
  // S_3 as permutations composed
  {
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                             {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    out.push_back(make("S_3", 6, 0, [perms](int a, int b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] =
          perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
              perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
      for (std::size_t p = 0; p < perms.size(); ++p)
        if (perms[p] == c) return static_cast<int>(p);
      return -1;
    }));
  }
  return out;
}

}  // namespace depsum
