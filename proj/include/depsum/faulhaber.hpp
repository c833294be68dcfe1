#pragma once

#include <mutex>
#include <vector>

#include "depsum/poly.hpp"

namespace depsum {

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational r(1);
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

// Bernoulli numbers with the B_1 = +1/2 convention. Computed with the classical
// minus-convention recurrence sum_{j<=m} C(m+1,j) B_j = [m=0], then B_1 flipped.
inline Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};  // B_0^-
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    int m = static_cast<int>(table.size());
    Rational acc(0);
    for (int j = 0; j < m; ++j) acc = acc + binomial(m + 1, j) * table[j];
    table.push_back(-acc / Rational(m + 1));
  }
  if (n == 1) return Rational(1, 2);
  return table[n];
}

// d-th Faulhaber polynomial: F_d(m) = 1^d + 2^d + ... + m^d for all naturals m.
inline RationalPoly faulhaber_poly(int d) {
  if (d < 0) throw std::invalid_argument("faulhaber_poly: negative degree");
  RationalPoly f;
  for (int n = 0; n <= d; ++n) {
    Rational c = binomial(d + 1, n) * bernoulli(n) / Rational(d + 1);
    f += c * RationalPoly::variable(kVarX, d - n + 1);
  }
  return f;
}

// The discrete summation operator: Sum(p)(m) = p(1) + ... + p(m), acting on the
// X variable and leaving Y and U coefficients alone.
inline RationalPoly sum_operator(const RationalPoly& p) {
  RationalPoly result;
  int d = p.degree(kVarX);
  for (int i = 0; i <= std::max(d, 0); ++i) {
    RationalPoly ci = p.coeff_of(kVarX, i);
    if (ci.is_zero()) continue;
    result += ci * faulhaber_poly(i);
  }
  return result;
}

// Same summation acting on an arbitrary variable.
inline RationalPoly sum_operator_in(const RationalPoly& p, int var) {
  RationalPoly result;
  int d = p.degree(var);
  for (int i = 0; i <= std::max(d, 0); ++i) {
    RationalPoly ci = p.coeff_of(var, i);
    if (ci.is_zero()) continue;
    result += ci * faulhaber_poly(i).substitute(kVarX, RationalPoly::variable(var));
  }
  return result;
}

// Certifies p = q over a Q-algebra by checking count points 0..count-1; valid
// whenever count exceeds both degrees.
inline bool poly_identity_check_by_points(const RationalPoly& p, const RationalPoly& q,
                                          int count) {
  for (int n = 0; n < count; ++n)
    if (!(p.eval(Rational(n)) == q.eval(Rational(n)))) return false;
  return true;
}

}  // namespace depsum
