#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "depsum/analytic.hpp"
#include "depsum/check.hpp"
#include "depsum/quadrature.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// The four analytic adders share one implementation differing in carrier and
// fiber shape: non-negative reals and [0,1] have fibers [0, x]; the full line
// and [-1,1] carry line fibers sampled on a window (negative extents flip the
// orientation of the integral).
enum class RealCarrier { NonNegative, UnitInterval, AllReal, SymInterval };

class RealAdder {
public:
  using Elem = double;
  using Point = double;
  struct Fiber {
    double lo = 0.0, hi = 0.0;  // sampling range; [0,x] fibers have lo=0, hi=x
  };
  struct Family {
    std::function<double(double)> fn;
    std::string desc;
  };
  struct Family2 {
    std::function<double(double, double)> fn;
    std::string desc;
  };

  explicit RealAdder(RealCarrier carrier, double tol = 1e-6)
      : carrier_(carrier), tol_(tol) {
    spec_.abs_tol = 1e-10;
  }

  std::string name() const {
    switch (carrier_) {
      case RealCarrier::NonNegative: return "rplus";
      case RealCarrier::UnitInterval: return "unit";
      case RealCarrier::AllReal: return "real";
      case RealCarrier::SymInterval: return "sym";
    }
    return "?";
  }
  RealCarrier carrier() const { return carrier_; }
  double tolerance() const { return tol_; }
  const QuadratureSpec& spec() const { return spec_; }
  bool commutative() const { return true; }
  Elem unit() const { return 1.0; }
  std::optional<Elem> zero() const { return 0.0; }

  Fiber fiber_of(const Elem& x) const {
    switch (carrier_) {
      case RealCarrier::NonNegative:
      case RealCarrier::UnitInterval:
        return Fiber{0.0, x};
      case RealCarrier::AllReal:
        return Fiber{-4.0, 4.0};
      case RealCarrier::SymInterval:
        return Fiber{-1.0, 1.0};
    }
    return {};
  }

  Family const_family(const Fiber&, const Elem& c) const {
    return Family{[c](double) { return c; }, "const " + std::to_string(c)};
  }
  Elem eval(const Family& f, const Point& t) const { return f.fn(t); }
  Elem sum(const Elem& x, const Family& f) const { return integrate(f.fn, 0.0, x, spec_); }
  Point flatten(const Elem&, const Family& f, const Point& a, const Point&) const {
    return integrate(f.fn, 0.0, a, spec_);
  }

  Family inner_family(const Elem& x, const Family& f, const Family& g, const Point& a) const {
    double base = flatten(x, f, a, 0.0);
    double value = g.fn(base);
    return Family{[value](double) { return value; }, "const " + std::to_string(value)};
  }

  // (f ⊠ g)(a) = f(a) · g(∫_0^a f); the inner integral is memoized because the
  // outer quadrature revisits the same abscissae across subdivision levels
  Family boxtimes(const Elem&, const Family& f, const Family& g) const {
    auto ffn = f.fn;
    auto gfn = g.fn;
    QuadratureSpec spec = spec_;
    auto memo = std::make_shared<std::map<double, double>>();
    return Family{[ffn, gfn, spec, memo](double a) {
                    auto it = memo->find(a);
                    double inner;
                    if (it != memo->end()) {
                      inner = it->second;
                    } else {
                      inner = integrate(ffn, 0.0, a, spec);
                      memo->emplace(a, inner);
                    }
                    return ffn(a) * gfn(inner);
                  },
                  "(" + f.desc + ") ⊠ (" + g.desc + ")"};
  }

  Family scale_family(const Elem& y, const Family& f) const {
    auto fn = f.fn;
    return Family{[y, fn](double t) { return y * fn(t); },
                  std::to_string(y) + "*(" + f.desc + ")"};
  }

  bool equal_elem(const Elem& a, const Elem& b) const { return std::abs(a - b) <= tol_; }
  bool equal_point(const Point& a, const Point& b) const { return std::abs(a - b) <= tol_; }

  Elem gen_elem(Rng& rng) const {
    switch (carrier_) {
      case RealCarrier::NonNegative: return rng.next_real(0.0, 2.5);
      case RealCarrier::UnitInterval: return rng.next_real(0.0, 1.0);
      case RealCarrier::AllReal: return rng.next_real(-2.5, 2.5);
      case RealCarrier::SymInterval: return rng.next_real(-1.0, 1.0);
    }
    return 0.0;
  }

  // Clamped carriers reject families whose range leaves the carrier instead of
  // clamping values, which would silently break associativity.
  Family gen_family(Rng& rng, const Fiber& fib) const {
    for (int attempt = 0; attempt < 32; ++attempt) {
      double scale = carrier_ == RealCarrier::NonNegative ? 1.0
                     : carrier_ == RealCarrier::AllReal   ? 0.3
                                                          : 0.45;
      AnalyticFamily af = AnalyticFamily::random(rng, scale);
      if (carrier_ == RealCarrier::NonNegative)
        af.terms.push_back(AnalyticTerm{AnalyticTerm::Kind::Monomial, 0.0, 1.8});
      if (carrier_ == RealCarrier::AllReal) {
        // drop fast-growing pieces on the widened domain
        for (auto& term : af.terms) {
          if (term.kind == AnalyticTerm::Kind::Exp) term.param *= 0.25;
          if (term.kind == AnalyticTerm::Kind::Monomial && term.param > 2) term.param = 1.0;
        }
      }
      if (range_ok(af, fib)) {
        auto fn = [af](double t) { return af.eval(t); };
        return Family{fn, af.describe()};
      }
    }
    double c = carrier_ == RealCarrier::NonNegative ? 1.0
               : carrier_ == RealCarrier::AllReal   ? -0.5
                                                    : 0.5;
    return const_family(fib, c);
  }

  Family2 gen_family2(Rng& rng, const Fiber& fx, const Fiber& fy) const {
    AnalyticFamily a = gen_component(rng, fx);
    AnalyticFamily b = gen_component(rng, fy);
    return Family2{[a, b](double s, double t) { return a.eval(s) * b.eval(t); },
                   "(" + a.describe() + ")·(" + b.describe() + ")"};
  }
  Family2 swap2(const Family2& f2) const {
    auto fn = f2.fn;
    return Family2{[fn](double s, double t) { return fn(t, s); }, "switch(" + f2.desc + ")"};
  }
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    auto fn = f2.fn;
    QuadratureSpec spec = spec_;
    return Family{[fn, x, spec](double t) {
                    return integrate([&](double s) { return fn(s, t); }, 0.0, x, spec);
                  },
                  "Σ_s(" + f2.desc + ")"};
  }

  // 33 evenly spaced interior points plus the endpoints
  std::vector<Point> sample_points(const Fiber& fib, Rng&) const {
    std::vector<Point> ps;
    const int n = 33;
    if (fib.hi < fib.lo) return ps;
    for (int i = 0; i <= n + 1; ++i)
      ps.push_back(fib.lo + (fib.hi - fib.lo) * static_cast<double>(i) / (n + 1));
    return ps;
  }

  std::string show_elem(const Elem& x) const { return std::to_string(x); }
  std::string show_point(const Point& p) const { return std::to_string(p); }
  std::string show_family(const Family& f) const { return f.desc; }
  std::string show_family2(const Family2& f2) const { return f2.desc; }

private:
  RealCarrier carrier_;
  double tol_;
  QuadratureSpec spec_;

  // Generated families stay inside the carrier and numerically tame: line
  // carriers additionally bound values on a widened domain so that iterated
  // sums and flatten positions keep every later evaluation in checked range.
  bool in_carrier(double v) const {
    switch (carrier_) {
      case RealCarrier::NonNegative: return v >= 0.0 && v <= 8.0;
      case RealCarrier::UnitInterval: return v >= 0.0 && v <= 1.0;
      case RealCarrier::AllReal: return std::abs(v) <= 1.0;
      case RealCarrier::SymInterval: return v >= -1.0 && v <= 1.0;
    }
    return false;
  }

  bool range_ok(const AnalyticFamily& af, const Fiber& fib) const {
    const int grid = 160;
    double lo = fib.lo, hi = fib.hi;
    if (carrier_ == RealCarrier::AllReal) {
      lo = -8.0;
      hi = 8.0;
    }
    for (int i = 0; i <= grid; ++i) {
      double t = lo + (hi - lo) * static_cast<double>(i) / grid;
      double v = af.eval(t);
      if (!std::isfinite(v) || !in_carrier(v)) return false;
    }
    return true;
  }

  AnalyticFamily gen_component(Rng& rng, const Fiber& fib) const {
    for (int attempt = 0; attempt < 32; ++attempt) {
      AnalyticFamily af = AnalyticFamily::random(rng, carrier_ == RealCarrier::AllReal ? 0.3 : 0.45);
      if (carrier_ == RealCarrier::NonNegative)
        af.terms.push_back(AnalyticTerm{AnalyticTerm::Kind::Monomial, 0.0, 1.0});
      if (carrier_ == RealCarrier::AllReal) {
        for (auto& term : af.terms) {
          if (term.kind == AnalyticTerm::Kind::Exp) term.param *= 0.25;
          if (term.kind == AnalyticTerm::Kind::Monomial && term.param > 2) term.param = 1.0;
        }
      }
      if (range_ok(af, fib)) return af;
    }
    return AnalyticFamily::constant(0.5);
  }
};

inline RealAdder make_rplus_adder(double tol = 1e-6) {
  return RealAdder(RealCarrier::NonNegative, tol);
}
inline RealAdder make_unit_adder(double tol = 1e-6) {
  return RealAdder(RealCarrier::UnitInterval, tol);
}
inline RealAdder make_real_adder(double tol = 1e-6) { return RealAdder(RealCarrier::AllReal, tol); }
inline RealAdder make_sym_adder(double tol = 1e-6) {
  return RealAdder(RealCarrier::SymInterval, tol);
}

inline double real_sum(double x, const std::function<double(double)>& f) {
  return integrate(f, 0.0, x, QuadratureSpec{});
}
inline double real_flatten(double a, const std::function<double(double)>& f) {
  return integrate(f, 0.0, a, QuadratureSpec{});
}

// ---------------------------------------------------------------------------
// Differentiable reparametrizations h with h(0) = 0 and the substitution
// identity  ∫_0^{h(x)} f = ∫_0^x f(h(t)) h'(t) dt.
// ---------------------------------------------------------------------------
struct SmoothMap {
  std::function<double(double)> h;
  std::function<double(double)> dh;
  std::string desc;

  static SmoothMap random(Rng& rng) {
    switch (rng.next_below(4)) {
      case 0: {
        double a = rng.next_real(-1.5, 1.5);
        return SmoothMap{[a](double t) { return a * t; }, [a](double) { return a; },
                         std::to_string(a) + "*t"};
      }
      case 1: {
        double a = rng.next_real(-1.0, 1.0);
        return SmoothMap{[a](double t) { return a * t * t; },
                         [a](double t) { return 2.0 * a * t; },
                         std::to_string(a) + "*t^2"};
      }
      case 2: {
        double m = static_cast<double>(1 + rng.next_below(2));
        return SmoothMap{[m](double t) { return std::sin(m * t) / m; },
                         [m](double t) { return std::cos(m * t); },
                         "sin(" + std::to_string(m) + "t)/" + std::to_string(m)};
      }
      default: {
        return SmoothMap{[](double t) { return t * t * t; },
                         [](double t) { return 3.0 * t * t; }, "t^3"};
      }
    }
  }
};

inline CheckResult substitution_check(std::uint64_t cases, std::uint64_t seed,
                                      double tol = 1e-6) {
  CheckResult out;
  out.axiom = "substitution";
  QuadratureSpec spec;
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    AnalyticFamily f = AnalyticFamily::random(rng);
    SmoothMap h = SmoothMap::random(rng);
    double x = rng.next_real(-1.5, 1.5);
    double lhs = integrate([&](double t) { return f.eval(t); }, 0.0, h.h(x), spec);
    double rhs = integrate([&](double t) { return f.eval(h.h(t)) * h.dh(t); }, 0.0, x, spec);
    ++out.cases_run;
    if (std::abs(lhs - rhs) > tol)
      out.record(k, "f=" + f.describe() + " h=" + h.desc + " x=" + std::to_string(x),
                 std::to_string(lhs), std::to_string(rhs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complex polynomial adder: entire functions restricted to polynomials; the
// sum is the path integral from 0 to z, path-independent by design.
// ---------------------------------------------------------------------------
struct ComplexPoly {
  std::vector<std::complex<double>> coeffs;  // sum c_k z^k

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
  }
  // termwise antiderivative vanishing at 0
  ComplexPoly antiderivative() const {
    ComplexPoly p;
    p.coeffs.assign(coeffs.size() + 1, {0.0, 0.0});
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      p.coeffs[k + 1] = coeffs[k] / static_cast<double>(k + 1);
    return p;
  }
  ComplexPoly compose(const ComplexPoly& inner) const {
    ComplexPoly acc;
    acc.coeffs = {{0.0, 0.0}};
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      // acc = acc*inner + c_k
      ComplexPoly next;
      next.coeffs.assign(acc.coeffs.size() + inner.coeffs.size(), {0.0, 0.0});
      for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
        for (std::size_t j = 0; j < inner.coeffs.size(); ++j)
          next.coeffs[i + j] += acc.coeffs[i] * inner.coeffs[j];
      if (next.coeffs.empty()) next.coeffs = {{0.0, 0.0}};
      next.coeffs[0] += coeffs[k];
      while (next.coeffs.size() > 1 && std::abs(next.coeffs.back()) == 0.0)
        next.coeffs.pop_back();
      acc = next;
    }
    return acc;
  }
  ComplexPoly multiply(const ComplexPoly& o) const {
    ComplexPoly r;
    r.coeffs.assign(coeffs.size() + o.coeffs.size(), {0.0, 0.0});
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs.size(); ++j) r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    return r;
  }
  std::string describe() const {
    std::string s = "[";
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (k) s += ", ";
      s += std::to_string(coeffs[k].real()) + (coeffs[k].imag() < 0 ? "-" : "+") +
           std::to_string(std::abs(coeffs[k].imag())) + "i";
    }
    return s + "]";
  }
};

// P(z) - P(0) with P the termwise antiderivative.
inline std::complex<double> complex_path_sum(std::complex<double> z, const ComplexPoly& p) {
  return p.antiderivative().eval(z);
}

// Numeric line integral along the straight path 0 → z.
inline std::complex<double> complex_straight_path(std::complex<double> z, const ComplexPoly& p,
                                                  const QuadratureSpec& spec = {}) {
  auto re = [&](double t) { return (p.eval(z * t) * z).real(); };
  auto im = [&](double t) { return (p.eval(z * t) * z).imag(); };
  return {integrate(re, 0.0, 1.0, spec), integrate(im, 0.0, 1.0, spec)};
}

// Numeric line integral along a two-segment path 0 → w → z.
inline std::complex<double> complex_bent_path(std::complex<double> z, const ComplexPoly& p,
                                              std::complex<double> w,
                                              const QuadratureSpec& spec = {}) {
  auto seg = [&](std::complex<double> from, std::complex<double> to) {
    std::complex<double> d = to - from;
    auto re = [&](double t) { return (p.eval(from + d * t) * d).real(); };
    auto im = [&](double t) { return (p.eval(from + d * t) * d).imag(); };
    return std::complex<double>{integrate(re, 0.0, 1.0, spec), integrate(im, 0.0, 1.0, spec)};
  };
  return seg({0.0, 0.0}, w) + seg(w, z);
}

class ComplexAdder {
public:
  using Elem = std::complex<double>;
  using Point = std::complex<double>;
  struct Fiber {};  // the plane, sampled
  using Family = ComplexPoly;
  struct Family2 {
    std::vector<std::vector<std::complex<double>>> coeffs;  // sum c_{k,l} s^k t^l
  };

  explicit ComplexAdder(double tol = 1e-6) : tol_(tol) {}

  std::string name() const { return "complex"; }
  bool commutative() const { return true; }
  Elem unit() const { return {1.0, 0.0}; }
  std::optional<Elem> zero() const { return Elem{0.0, 0.0}; }

  Fiber fiber_of(const Elem&) const { return {}; }
  Family const_family(const Fiber&, const Elem& c) const { return Family{{c}}; }
  Elem eval(const Family& f, const Point& z) const { return f.eval(z); }
  Elem sum(const Elem& z, const Family& p) const { return complex_path_sum(z, p); }
  Point flatten(const Elem&, const Family& p, const Point& a, const Point&) const {
    return complex_path_sum(a, p);
  }
  Family inner_family(const Elem& x, const Family& f, const Family& g, const Point& a) const {
    return Family{{g.eval(flatten(x, f, a, {0.0, 0.0}))}};
  }
  // (f ⊠ g)(a) = f(a) · g(F(a)) with F the antiderivative; exact coefficients
  Family boxtimes(const Elem&, const Family& f, const Family& g) const {
    return f.multiply(g.compose(f.antiderivative()));
  }
  Family scale_family(const Elem& y, const Family& f) const {
    Family r = f;
    for (auto& c : r.coeffs) c *= y;
    return r;
  }

  bool equal_elem(const Elem& a, const Elem& b) const { return std::abs(a - b) <= tol_; }
  bool equal_point(const Point& a, const Point& b) const { return std::abs(a - b) <= tol_; }

  Elem gen_elem(Rng& rng) const {
    return {rng.next_real(-1.0, 1.0), rng.next_real(-1.0, 1.0)};
  }
  Family gen_family(Rng& rng, const Fiber&) const {
    Family f;
    int deg = static_cast<int>(rng.next_below(4));
    for (int k = 0; k <= deg; ++k)
      f.coeffs.push_back({rng.next_real(-0.8, 0.8), rng.next_real(-0.8, 0.8)});
    return f;
  }
  Family2 gen_family2(Rng& rng, const Fiber&, const Fiber&) const {
    Family2 f2;
    for (int k = 0; k <= 2; ++k) {
      f2.coeffs.emplace_back();
      for (int l = 0; l <= 2; ++l)
        f2.coeffs.back().push_back({rng.next_real(-0.6, 0.6), rng.next_real(-0.6, 0.6)});
    }
    return f2;
  }
  Family2 swap2(const Family2& f2) const {
    Family2 r;
    std::size_t rows = f2.coeffs.size(), cols = rows ? f2.coeffs[0].size() : 0;
    r.coeffs.assign(cols, std::vector<std::complex<double>>(rows));
    for (std::size_t k = 0; k < rows; ++k)
      for (std::size_t l = 0; l < cols; ++l) r.coeffs[l][k] = f2.coeffs[k][l];
    return r;
  }
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    // integrate out the first slot: antiderivative in s evaluated at x
    Family out;
    std::size_t cols = f2.coeffs.empty() ? 0 : f2.coeffs[0].size();
    for (std::size_t l = 0; l < cols; ++l) {
      ComplexPoly column;
      for (std::size_t k = 0; k < f2.coeffs.size(); ++k) column.coeffs.push_back(f2.coeffs[k][l]);
      out.coeffs.push_back(complex_path_sum(x, column));
    }
    return out;
  }

  std::vector<Point> sample_points(const Fiber&, Rng& rng) const {
    std::vector<Point> ps = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-0.5, 0.5}, {0.7, -0.3}};
    for (int i = 0; i < 3; ++i) ps.push_back(gen_elem(rng));
    return ps;
  }

  std::string show_elem(const Elem& z) const {
    return std::to_string(z.real()) + (z.imag() < 0 ? "-" : "+") +
           std::to_string(std::abs(z.imag())) + "i";
  }
  std::string show_point(const Point& p) const { return show_elem(p); }
  std::string show_family(const Family& f) const { return f.describe(); }
  std::string show_family2(const Family2&) const { return "bivariate poly"; }

private:
  double tol_;
};

// Straight vs bent path agreement on random polynomials.
inline CheckResult complex_path_independence(std::uint64_t cases, std::uint64_t seed,
                                             double tol = 1e-8) {
  CheckResult out;
  out.axiom = "path-independence";
  ComplexAdder a;
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    ComplexPoly p = a.gen_family(rng, {});
    std::complex<double> z = a.gen_elem(rng);
    std::complex<double> w{rng.next_real(-1.0, 1.0), rng.next_real(-1.0, 1.0)};
    std::complex<double> straight = complex_straight_path(z, p);
    std::complex<double> bent = complex_bent_path(z, p, w);
    std::complex<double> closed = complex_path_sum(z, p);
    ++out.cases_run;
    if (std::abs(straight - bent) > tol || std::abs(straight - closed) > tol)
      out.record(k, "p=" + p.describe() + " z=" + a.show_elem(z),
                 a.show_elem(straight), a.show_elem(bent));
  }
  return out;
}

}  // namespace depsum
