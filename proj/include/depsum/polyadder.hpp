#pragma once

#include <optional>
#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "depsum/faulhaber.hpp"
#include "depsum/poly.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// The affine-line adder over Q: elements are polynomials in the parameter U
// (degree 0 = plain rationals), families are polynomials in the index X with
// U-polynomial coefficients, sums go through the discrete summation operator,
// and every axiom is an exact polynomial identity.
class FaulhaberAdder {
public:
  using Elem = RationalPoly;    // polynomial in U only
  using Point = RationalPoly;   // sampled points of the affine line
  struct Fiber {};              // the affine line
  using Family = RationalPoly;  // polynomial in X (coefficients may use U)
  using Family2 = RationalPoly; // polynomial in X and Y

  std::string name() const { return "faulhaber"; }
  bool commutative() const { return true; }
  Elem unit() const { return RationalPoly::constant(Rational(1)); }
  std::optional<Elem> zero() const { return RationalPoly(); }

  Fiber fiber_of(const Elem&) const { return {}; }
  Family const_family(const Fiber&, const Elem& c) const { return c; }
  Elem eval(const Family& f, const Point& i) const { return f.substitute(kVarX, i); }

  // Sum^x p = Sum(p)(x)
  Elem sum(const Elem& x, const Family& p) const {
    return sum_operator(p).substitute(kVarX, x);
  }

  // p^♭ = Y + Sum^{X-1}(p), evaluated at (i, j)
  Point flatten(const Elem&, const Family& p, const Point& i, const Point& j) const {
    RationalPoly xm1 = i - RationalPoly::constant(Rational(1));
    return j + sum_operator(p).substitute(kVarX, xm1);
  }

  Family inner_family(const Elem&, const Family& f, const Family& g, const Point& i) const {
    RationalPoly base =
        sum_operator(f).substitute(kVarX, i - RationalPoly::constant(Rational(1)));
    return g.substitute(kVarX, RationalPoly::variable(kVarX) + base);
  }

  // f ⊠ g = (Sum_Y g(Y + Sum^{X-1} f)) evaluated at Y := f
  Family boxtimes(const Elem&, const Family& f, const Family& g) const {
    RationalPoly xm1 = RationalPoly::variable(kVarX) - RationalPoly::constant(Rational(1));
    RationalPoly fflat = RationalPoly::variable(kVarY) + sum_operator(f).substitute(kVarX, xm1);
    RationalPoly gf = g.substitute(kVarX, fflat);
    return sum_operator_in(gf, kVarY).substitute(kVarY, f);
  }

  Family scale_family(const Elem& y, const Family& f) const { return y * f; }

  bool equal_elem(const Elem& a, const Elem& b) const { return a == b; }
  bool equal_point(const Point& a, const Point& b) const { return a == b; }

  Elem gen_elem(Rng& rng) const {
    // plain rationals and genuine U-polynomials both occur
    RationalPoly x = RationalPoly::constant(Rational(rng.next_int(-4, 4), rng.next_int(1, 3)));
    if (rng.next_below(3) == 0) {
      x += Rational(rng.next_int(-2, 2)) * RationalPoly::variable(kVarU);
      if (rng.next_bool()) x += Rational(rng.next_int(-1, 1)) * RationalPoly::variable(kVarU, 2);
    }
    return x;
  }

  Family gen_family(Rng& rng, const Fiber&) const {
    RationalPoly p;
    int deg = static_cast<int>(rng.next_below(4));
    for (int k = 0; k <= deg; ++k) {
      Rational c(rng.next_int(-3, 3), rng.next_int(1, 2));
      if (c.is_zero()) continue;
      RationalPoly term = c * RationalPoly::variable(kVarX, k);
      if (rng.next_below(4) == 0) term = term * RationalPoly::variable(kVarU);
      p += term;
    }
    return p;
  }

  Family2 gen_family2(Rng& rng, const Fiber&, const Fiber&) const {
    RationalPoly p;
    for (int kx = 0; kx <= 2; ++kx)
      for (int ky = 0; ky <= 2; ++ky) {
        Rational c(rng.next_int(-2, 2));
        if (c.is_zero()) continue;
        p += c * (RationalPoly::variable(kVarX, kx) * RationalPoly::variable(kVarY, ky));
      }
    return p;
  }
  Family2 swap2(const Family2& f2) const { return f2.swap_vars(kVarX, kVarY); }
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    RationalPoly summed = sum_operator_in(f2, kVarX).substitute(kVarX, x);
    return summed.swap_vars(kVarY, kVarX);
  }

  std::vector<Point> sample_points(const Fiber&, Rng&) const {
    std::vector<Point> ps;
    for (int v : {0, 1, 2, 3, 5, -1, -2}) ps.push_back(RationalPoly::constant(Rational(v)));
    ps.push_back(RationalPoly::constant(Rational(1, 2)));
    return ps;
  }

  std::string show_elem(const Elem& x) const { return x.to_string(); }
  std::string show_point(const Point& p) const { return p.to_string(); }
  std::string show_family(const Family& f) const { return f.to_string(); }
  std::string show_family2(const Family2& f2) const { return f2.to_string(); }
};

inline RationalPoly faulhaber_sum(const RationalPoly& x, const RationalPoly& p) {
  return FaulhaberAdder{}.sum(x, p);
}

// The symbolic flattening polynomial Y + Sum^{X-1}(p).
inline RationalPoly faulhaber_flatten(const RationalPoly& p) {
  RationalPoly xm1 = RationalPoly::variable(kVarX) - RationalPoly::constant(Rational(1));
  return RationalPoly::variable(kVarY) + sum_operator(p).substitute(kVarX, xm1);
}

// Exact-identity verification of the adder laws on generated families:
// the shift law, sum associativity, additivity, and Fubini, all with a
// symbolic summation bound.
inline CheckResult faulhaber_axiom_identities(std::uint64_t cases = 60, std::uint64_t seed = 0,
                                              int max_degree = 5) {
  FaulhaberAdder a;
  CheckResult out;
  out.axiom = "faulhaber-identities";
  RationalPoly U = RationalPoly::variable(kVarU);
  RationalPoly Y = RationalPoly::variable(kVarY);
  RationalPoly X = RationalPoly::variable(kVarX);
  for (std::uint64_t k = 0; k < cases; ++k) {
    Rng rng = Rng::derive(seed, k);
    // univariate families of degree <= max_degree with plain rational coefficients
    auto gen = [&]() {
      RationalPoly p;
      int deg = static_cast<int>(rng.next_below(max_degree + 1));
      for (int i = 0; i <= deg; ++i)
        p += Rational(rng.next_int(-3, 3), rng.next_int(1, 2)) * RationalPoly::variable(kVarX, i);
      return p;
    };
    RationalPoly f = gen(), g = gen();
    ++out.cases_run;

    // shift law: Sum^{x+y}(p) = Sum^x(p) + Sum^y(p(T+x)) with x := U, y := Y
    RationalPoly S = sum_operator(f);
    RationalPoly shift_lhs = S.substitute(kVarX, U + Y);
    RationalPoly shifted = f.substitute(kVarX, X + U);
    RationalPoly shift_rhs =
        S.substitute(kVarX, U) + sum_operator(shifted).substitute(kVarX, Y);
    if (!(shift_lhs == shift_rhs)) {
      out.record(k, "shift law f=" + f.to_string(), shift_lhs.to_string(),
                 shift_rhs.to_string());
      continue;
    }

    // additivity: Sum^x(f+g) = Sum^x f + Sum^x g, symbolic in U
    RationalPoly add_lhs = a.sum(U, f + g);
    RationalPoly add_rhs = a.sum(U, f) + a.sum(U, g);
    if (!(add_lhs == add_rhs)) {
      out.record(k, "additivity f=" + f.to_string() + " g=" + g.to_string(),
                 add_lhs.to_string(), add_rhs.to_string());
      continue;
    }

    // sum associativity: Sum^{Sum^x f} g = Sum^x (f ⊠ g), symbolic in U
    RationalPoly lhs = a.sum(a.sum(U, f), g);
    RationalPoly rhs = a.sum(U, a.boxtimes(U, f, g));
    if (!(lhs == rhs)) {
      out.record(k, "sum assoc f=" + f.to_string() + " g=" + g.to_string(), lhs.to_string(),
                 rhs.to_string());
      continue;
    }

    // Fubini with a bivariate family: symbolic in U on one leg, point-checked
    // on the other with more points than any degree involved
    RationalPoly f2 = a.gen_family2(rng, {}, {});
    int points = f2.degree(kVarX) + f2.degree(kVarY) + 8;
    bool fubini_ok = true;
    for (int yv = 0; yv < points && fubini_ok; ++yv) {
      RationalPoly yval = RationalPoly::constant(Rational(yv));
      RationalPoly l = a.sum(yval, a.partial_sum_family(U, f2));
      RationalPoly r = a.sum(U, a.partial_sum_family(yval, a.swap2(f2)));
      if (!(l == r)) {
        out.record(k, "fubini f=" + f2.to_string() + " at y=" + std::to_string(yv),
                   l.to_string(), r.to_string());
        fubini_ok = false;
      }
    }
  }
  return out;
}

}  // namespace depsum
