#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "depsum/rng.hpp"

namespace depsum {

// Finite combinations of t^k (k <= 6), cos(mt), sin(mt), exp(ct) with |c| <= 1.
// Every term has a closed-form antiderivative, kept for use as a test oracle;
// sums in the adders go through quadrature.
struct AnalyticTerm {
  enum class Kind { Monomial, Cos, Sin, Exp } kind = Kind::Monomial;
  double param = 0.0;  // exponent k, frequency m, or rate c
  double coeff = 1.0;

  double eval(double t) const {
    switch (kind) {
      case Kind::Monomial: return coeff * std::pow(t, param);
      case Kind::Cos: return coeff * std::cos(param * t);
      case Kind::Sin: return coeff * std::sin(param * t);
      case Kind::Exp: return coeff * std::exp(param * t);
    }
    return 0.0;
  }

  // antiderivative vanishing at 0
  double antiderivative(double t) const {
    switch (kind) {
      case Kind::Monomial: return coeff * std::pow(t, param + 1.0) / (param + 1.0);
      case Kind::Cos: return param == 0.0 ? coeff * t : coeff * std::sin(param * t) / param;
      case Kind::Sin: return param == 0.0 ? 0.0 : coeff * (1.0 - std::cos(param * t)) / param;
      case Kind::Exp: return param == 0.0 ? coeff * t : coeff * (std::exp(param * t) - 1.0) / param;
    }
    return 0.0;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::Monomial: return std::to_string(coeff) + "*t^" + std::to_string(param);
      case Kind::Cos: return std::to_string(coeff) + "*cos(" + std::to_string(param) + "t)";
      case Kind::Sin: return std::to_string(coeff) + "*sin(" + std::to_string(param) + "t)";
      case Kind::Exp: return std::to_string(coeff) + "*exp(" + std::to_string(param) + "t)";
    }
    return "?";
  }
};

struct AnalyticFamily {
  std::vector<AnalyticTerm> terms;

  double eval(double t) const {
    double s = 0.0;
    for (const auto& term : terms) s += term.eval(t);
    return s;
  }
  double antiderivative(double t) const {
    double s = 0.0;
    for (const auto& term : terms) s += term.antiderivative(t);
    return s;
  }
  std::string describe() const {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i].describe();
    return s;
  }

  static AnalyticFamily constant(double c) {
    return AnalyticFamily{{AnalyticTerm{AnalyticTerm::Kind::Monomial, 0.0, c}}};
  }

  static AnalyticFamily random(Rng& rng, double coeff_scale = 1.0) {
    AnalyticFamily f;
    int n = 1 + static_cast<int>(rng.next_below(3));
    for (int i = 0; i < n; ++i) {
      AnalyticTerm t;
      switch (rng.next_below(4)) {
        case 0:
          t.kind = AnalyticTerm::Kind::Monomial;
          t.param = static_cast<double>(rng.next_below(4));
          break;
        case 1:
          t.kind = AnalyticTerm::Kind::Cos;
          t.param = static_cast<double>(1 + rng.next_below(3));
          break;
        case 2:
          t.kind = AnalyticTerm::Kind::Sin;
          t.param = static_cast<double>(1 + rng.next_below(3));
          break;
        default:
          t.kind = AnalyticTerm::Kind::Exp;
          t.param = rng.next_real(-1.0, 1.0);
          break;
      }
      t.coeff = coeff_scale * rng.next_real(-1.0, 1.0);
      f.terms.push_back(t);
    }
    return f;
  }
};

}  // namespace depsum
