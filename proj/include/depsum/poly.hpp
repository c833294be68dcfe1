#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "depsum/rational.hpp"

namespace depsum {

// Exact multivariate polynomial over the rationals in at most three variables.
// Variable 0 is X (summation index), 1 is Y (flatten offset), 2 is U (parameter).
class RationalPoly {
public:
  using Exponents = std::array<int, 3>;
  static constexpr int kMaxVars = 3;
  static constexpr const char* kVarNames[3] = {"X", "Y", "U"};

  RationalPoly() = default;

  static RationalPoly constant(Rational c) {
    RationalPoly p;
    if (!c.is_zero()) p.terms_[{0, 0, 0}] = std::move(c);
    return p;
  }
  static RationalPoly variable(int var, int exp = 1) {
    check_var(var);
    RationalPoly p;
    Exponents e{0, 0, 0};
    e[var] = exp;
    p.terms_[e] = Rational(1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0, 0});
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    auto it = terms_.find({0, 0, 0});
    if (it == terms_.end() || terms_.size() != 1)
      throw std::logic_error("RationalPoly: not a constant");
    return it->second;
  }

  int degree(int var) const {
    check_var(var);
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return terms_.empty() ? -1 : d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }
  bool uses(int var) const {
    for (const auto& [e, c] : terms_)
      if (e[var] > 0) return true;
    return false;
  }

  const std::map<Exponents, Rational>& terms() const { return terms_; }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  RationalPoly operator-() const {
    RationalPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }
  friend RationalPoly operator*(const Rational& c, const RationalPoly& p) {
    return RationalPoly::constant(c) * p;
  }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.terms_ == b.terms_;
  }

  RationalPoly& operator+=(const RationalPoly& o) { return *this = *this + o; }

  static RationalPoly pow(const RationalPoly& base, int e) {
    RationalPoly r = constant(Rational(1));
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
  }

  // Substitute variable `var` by `repl`, keeping the other variables.
  RationalPoly substitute(int var, const RationalPoly& repl) const {
    check_var(var);
    RationalPoly result;
    // cache powers of repl
    std::vector<RationalPoly> powers{constant(Rational(1))};
    for (const auto& [e, c] : terms_) {
      while (static_cast<int>(powers.size()) <= e[var]) powers.push_back(powers.back() * repl);
      Exponents rest = e;
      rest[var] = 0;
      RationalPoly mono;
      mono.terms_[rest] = c;
      result = result + mono * powers[e[var]];
    }
    return result;
  }

  Rational eval(const Rational& x, const Rational& y = Rational(0),
                const Rational& u = Rational(0)) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      if (e[0]) t = t * Rational::pow(x, static_cast<unsigned>(e[0]));
      if (e[1]) t = t * Rational::pow(y, static_cast<unsigned>(e[1]));
      if (e[2]) t = t * Rational::pow(u, static_cast<unsigned>(e[2]));
      acc = acc + t;
    }
    return acc;
  }

  RationalPoly swap_vars(int v1, int v2) const {
    check_var(v1);
    check_var(v2);
    RationalPoly r;
    for (const auto& [e, c] : terms_) {
      Exponents se = e;
      std::swap(se[v1], se[v2]);
      r.terms_[se] = c;
    }
    return r;
  }

  // Univariate coefficient extraction: coefficient of var^k as a poly in the others.
  RationalPoly coeff_of(int var, int k) const {
    check_var(var);
    RationalPoly r;
    for (const auto& [e, c] : terms_) {
      if (e[var] == k) {
        Exponents rest = e;
        rest[var] = 0;
        r.terms_[rest] = c;
      }
    }
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    // highest-degree first reads better
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (int v = 0; v < kMaxVars; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += kVarNames[v];
        if (e[v] > 1) mono += "^" + std::to_string(e[v]);
      }
      std::string coeff = c.to_string();
      std::string term;
      if (mono.empty()) {
        term = coeff;
      } else if (c == Rational(1)) {
        term = mono;
      } else if (c == Rational(-1)) {
        term = "-" + mono;
      } else {
        term = coeff + "*" + mono;
      }
      if (s.empty()) {
        s = term;
      } else if (!term.empty() && term[0] == '-') {
        s += " - " + term.substr(1);
      } else {
        s += " + " + term;
      }
    }
    return s;
  }

  // Clears denominators: prints e.g. (2*X^3 + 3*X^2 + X)/6.
  std::string to_string_common_den() const {
    BigInt lcm(1);
    for (const auto& [e, c] : terms_) lcm = lcm / BigInt::gcd(lcm, c.den()) * c.den();
    if (lcm == BigInt(1)) return to_string();
    RationalPoly scaled;
    for (const auto& [e, c] : terms_) scaled.terms_[e] = c * Rational(lcm);
    return "(" + scaled.to_string() + ")/" + lcm.to_string();
  }

private:
  std::map<Exponents, Rational> terms_;  // no zero coefficients stored

  static void check_var(int var) {
    if (var < 0 || var >= kMaxVars) throw std::out_of_range("RationalPoly: bad variable");
  }
  void add_term(const Exponents& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[e] = c;
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
};

inline constexpr int kVarX = 0;
inline constexpr int kVarY = 1;
inline constexpr int kVarU = 2;

}  // namespace depsum
