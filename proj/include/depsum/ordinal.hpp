#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "depsum/rng.hpp"

namespace depsum {

// Ordinals below epsilon_0 in Cantor normal form:
//   w^{e_1}*c_1 + ... + w^{e_k}*c_k,  e_1 > e_2 > ... > e_k,  c_i >= 1.
// The empty term list is 0. Comparison, addition, multiplication, left
// subtraction and left division below all operate on this normal form.
struct CnfOrdinal;

struct CnfTerm {
  std::vector<CnfTerm> exp;  // exponent, itself in CNF
  std::int64_t coeff = 0;
};

struct CnfOrdinal {
  std::vector<CnfTerm> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_finite() const {
    return terms.empty() || (terms.size() == 1 && terms[0].exp.empty());
  }
  std::int64_t finite_value() const {
    if (is_zero()) return 0;
    if (!is_finite()) throw std::domain_error("CnfOrdinal: not finite");
    return terms[0].coeff;
  }
  static CnfOrdinal finite(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("CnfOrdinal: negative");
    CnfOrdinal r;
    if (n > 0) r.terms.push_back({{}, n});
    return r;
  }
  static CnfOrdinal omega() {
    CnfOrdinal r;
    r.terms.push_back({finite(1).terms, 1});
    return r;
  }
  // w^e * c
  static CnfOrdinal power(const CnfOrdinal& e, std::int64_t c) {
    if (c <= 0) throw std::invalid_argument("CnfOrdinal: coefficient must be positive");
    CnfOrdinal r;
    r.terms.push_back({e.terms, c});
    return r;
  }
};

inline int cnf_cmp(const CnfOrdinal& a, const CnfOrdinal& b);

inline int cnf_cmp_terms(const std::vector<CnfTerm>& a, const std::vector<CnfTerm>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    int ce = cnf_cmp_terms(a[i].exp, b[i].exp);
    if (ce != 0) return ce;
    if (a[i].coeff != b[i].coeff) return a[i].coeff < b[i].coeff ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

inline int cnf_cmp(const CnfOrdinal& a, const CnfOrdinal& b) {
  return cnf_cmp_terms(a.terms, b.terms);
}

inline bool operator==(const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_cmp(a, b) == 0; }
inline bool operator<(const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_cmp(a, b) < 0; }
inline bool operator<=(const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_cmp(a, b) <= 0; }

// a + b: terms of a below b's leading exponent are absorbed.
inline CnfOrdinal cnf_add(const CnfOrdinal& a, const CnfOrdinal& b) {
  if (b.is_zero()) return a;
  CnfOrdinal r;
  const std::vector<CnfTerm>& lead_exp = b.terms[0].exp;
  std::size_t keep = 0;
  while (keep < a.terms.size() && cnf_cmp_terms(a.terms[keep].exp, lead_exp) > 0) ++keep;
  r.terms.assign(a.terms.begin(), a.terms.begin() + static_cast<std::ptrdiff_t>(keep));
  if (keep < a.terms.size() && cnf_cmp_terms(a.terms[keep].exp, lead_exp) == 0) {
    CnfTerm merged = b.terms[0];
    merged.coeff += a.terms[keep].coeff;
    r.terms.push_back(merged);
  } else {
    r.terms.push_back(b.terms[0]);
  }
  r.terms.insert(r.terms.end(), b.terms.begin() + 1, b.terms.end());
  return r;
}

// Unique d with a + d = b, for a <= b.
inline CnfOrdinal cnf_left_sub(const CnfOrdinal& a, const CnfOrdinal& b) {
  if (cnf_cmp(a, b) > 0) throw std::invalid_argument("cnf_left_sub: a > b");
  std::size_t i = 0;
  while (i < a.terms.size() && i < b.terms.size()) {
    int ce = cnf_cmp_terms(a.terms[i].exp, b.terms[i].exp);
    if (ce != 0 || a.terms[i].coeff != b.terms[i].coeff) break;
    ++i;
  }
  CnfOrdinal r;
  if (i == b.terms.size()) return r;  // a == b
  if (i < a.terms.size() && cnf_cmp_terms(a.terms[i].exp, b.terms[i].exp) == 0 &&
      a.terms[i].coeff < b.terms[i].coeff) {
    CnfTerm t = b.terms[i];
    t.coeff -= a.terms[i].coeff;
    r.terms.push_back(t);
    r.terms.insert(r.terms.end(), b.terms.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                   b.terms.end());
    return r;
  }
  r.terms.assign(b.terms.begin() + static_cast<std::ptrdiff_t>(i), b.terms.end());
  return r;
}

inline CnfOrdinal cnf_mul(const CnfOrdinal& a, const CnfOrdinal& b) {
  CnfOrdinal r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const CnfTerm& bt : b.terms) {
    CnfOrdinal piece;
    if (bt.exp.empty()) {
      // a * n = w^{e_1}*(c_1*n) + tail(a)
      piece.terms = a.terms;
      piece.terms[0].coeff *= bt.coeff;
    } else {
      CnfTerm t;
      CnfOrdinal e;
      e.terms = a.terms[0].exp;
      CnfOrdinal be;
      be.terms = bt.exp;
      t.exp = cnf_add(e, be).terms;
      t.coeff = bt.coeff;
      piece.terms.push_back(t);
    }
    r = cnf_add(r, piece);
  }
  return r;
}

// Unique (q, r) with t = c*q + r and r < c (left division by c > 0).
struct CnfDivMod {
  CnfOrdinal quot, rem;
};
inline CnfDivMod cnf_divmod_left(const CnfOrdinal& t, const CnfOrdinal& c) {
  if (c.is_zero()) throw std::domain_error("cnf_divmod_left: division by zero");
  if (cnf_cmp(t, c) < 0) return {CnfOrdinal{}, t};
  CnfOrdinal gamma;
  gamma.terms = c.terms[0].exp;
  CnfOrdinal tau;
  tau.terms = t.terms[0].exp;
  int ce = cnf_cmp(gamma, tau);
  if (ce < 0) {
    // c * (w^kappa * d1) = w^{gamma+kappa} * d1 swallows t's lead exactly
    CnfOrdinal kappa = cnf_left_sub(gamma, tau);
    CnfOrdinal qterm = CnfOrdinal::power(kappa, t.terms[0].coeff);
    CnfOrdinal tail;
    tail.terms.assign(t.terms.begin() + 1, t.terms.end());
    CnfDivMod rest = cnf_divmod_left(tail, c);
    return {cnf_add(qterm, rest.quot), rest.rem};
  }
  // equal leading exponents: finite quotient
  std::int64_t k = t.terms[0].coeff / c.terms[0].coeff;
  while (k > 0 && cnf_cmp(cnf_mul(c, CnfOrdinal::finite(k)), t) > 0) --k;
  CnfOrdinal q = CnfOrdinal::finite(k);
  CnfOrdinal r = cnf_left_sub(cnf_mul(c, q), t);
  return {q, r};
}

// --------------------------------------------------------------------------
// Step families: finitely presented functions [0, alpha) → Ord, constant on
// half-open segments.
// --------------------------------------------------------------------------
struct StepFamily {
  CnfOrdinal domain;
  struct Piece {
    CnfOrdinal cut;    // segment is [previous cut, cut)
    CnfOrdinal value;
  };
  std::vector<Piece> pieces;  // cuts strictly increasing, last cut == domain
};

inline void step_validate(const StepFamily& f) {
  CnfOrdinal prev;
  for (const auto& p : f.pieces) {
    if (cnf_cmp(prev, p.cut) >= 0) throw std::invalid_argument("StepFamily: cuts not increasing");
    prev = p.cut;
  }
  if (f.pieces.empty()) {
    if (!f.domain.is_zero()) throw std::invalid_argument("StepFamily: empty on nonzero domain");
  } else if (!(f.pieces.back().cut == f.domain)) {
    throw std::invalid_argument("StepFamily: last cut must equal the domain");
  }
}

inline StepFamily step_const(const CnfOrdinal& domain, const CnfOrdinal& value) {
  StepFamily f;
  f.domain = domain;
  if (!domain.is_zero()) f.pieces.push_back({domain, value});
  return f;
}

inline CnfOrdinal step_eval(const StepFamily& f, const CnfOrdinal& i) {
  if (cnf_cmp(i, f.domain) >= 0) throw std::out_of_range("StepFamily: point out of domain");
  for (const auto& p : f.pieces)
    if (cnf_cmp(i, p.cut) < 0) return p.value;
  throw std::logic_error("StepFamily: uncovered point");
}

// Sum over [0, i): full segments contribute value*(segment length), ordered.
inline CnfOrdinal step_partial_sum(const StepFamily& f, const CnfOrdinal& i) {
  CnfOrdinal acc;
  CnfOrdinal start;
  for (const auto& p : f.pieces) {
    const CnfOrdinal& end = cnf_cmp(p.cut, i) < 0 ? p.cut : i;
    if (cnf_cmp(start, end) < 0) acc = cnf_add(acc, cnf_mul(p.value, cnf_left_sub(start, end)));
    if (cnf_cmp(p.cut, i) >= 0) break;
    start = p.cut;
  }
  return acc;
}

inline CnfOrdinal ord_sum(const CnfOrdinal& alpha, const StepFamily& f) {
  if (!(f.domain == alpha)) throw std::invalid_argument("ord_sum: domain mismatch");
  step_validate(f);
  return step_partial_sum(f, alpha);
}

inline CnfOrdinal ord_flatten_eval(const CnfOrdinal& alpha, const StepFamily& f,
                                   const CnfOrdinal& i, const CnfOrdinal& j) {
  if (cnf_cmp(i, alpha) >= 0) throw std::out_of_range("ord_flatten_eval: i out of range");
  if (cnf_cmp(j, step_eval(f, i)) >= 0)
    throw std::out_of_range("ord_flatten_eval: j out of range");
  // j goes on the right of the partial sum
  return cnf_add(step_partial_sum(f, i), j);
}

// Restriction of g to [start, start+len), reindexed to [0, len).
inline StepFamily step_window(const StepFamily& g, const CnfOrdinal& start,
                              const CnfOrdinal& len) {
  StepFamily w;
  w.domain = len;
  if (len.is_zero()) return w;
  CnfOrdinal end = cnf_add(start, len);
  if (cnf_cmp(end, g.domain) > 0) throw std::out_of_range("step_window: beyond domain");
  for (const auto& p : g.pieces) {
    if (cnf_cmp(p.cut, start) <= 0) continue;
    const CnfOrdinal& cut = cnf_cmp(p.cut, end) < 0 ? p.cut : end;
    w.pieces.push_back({cnf_left_sub(start, cut), p.value});
    if (cnf_cmp(p.cut, end) >= 0) break;
  }
  return w;
}

// f ⊠ g as a step family. On a piece of f with value c over [s, e), position
// q sums g over the window [P_s + c*q, P_s + c*q + c); the window contents can
// only change at positions derived from cuts of g, which left division finds.
inline StepFamily step_boxtimes(const CnfOrdinal& alpha, const StepFamily& f,
                                const StepFamily& g) {
  if (!(f.domain == alpha)) throw std::invalid_argument("step_boxtimes: domain mismatch");
  StepFamily out;
  out.domain = alpha;
  CnfOrdinal s;  // piece start
  for (const auto& piece : f.pieces) {
    const CnfOrdinal& e = piece.cut;
    const CnfOrdinal& c = piece.value;
    CnfOrdinal len = cnf_left_sub(s, e);
    CnfOrdinal base = step_partial_sum(f, s);
    if (c.is_zero()) {
      out.pieces.push_back({e, CnfOrdinal{}});
      s = e;
      continue;
    }
    std::vector<CnfOrdinal> breaks{CnfOrdinal{}, len};
    for (const auto& gp : g.pieces) {
      if (cnf_cmp(gp.cut, base) <= 0) continue;
      CnfOrdinal rel = cnf_left_sub(base, gp.cut);
      CnfOrdinal q = cnf_divmod_left(rel, c).quot;
      if (cnf_cmp(q, len) < 0) {
        breaks.push_back(q);
        CnfOrdinal q1 = cnf_add(q, CnfOrdinal::finite(1));
        if (cnf_cmp(q1, len) < 0) breaks.push_back(q1);
      }
    }
    std::sort(breaks.begin(), breaks.end(),
              [](const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_cmp(a, b) < 0; });
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](const CnfOrdinal& a, const CnfOrdinal& b) { return a == b; }),
                 breaks.end());
    for (std::size_t bi = 0; bi + 1 < breaks.size(); ++bi) {
      CnfOrdinal window_start = cnf_add(base, cnf_mul(c, breaks[bi]));
      CnfOrdinal value = ord_sum(c, step_window(g, window_start, c));
      out.pieces.push_back({cnf_add(s, breaks[bi + 1]), value});
    }
    s = e;
  }
  // merge adjacent equal-valued pieces
  StepFamily merged;
  merged.domain = out.domain;
  for (const auto& p : out.pieces) {
    if (!merged.pieces.empty() && merged.pieces.back().value == p.value)
      merged.pieces.back().cut = p.cut;
    else
      merged.pieces.push_back(p);
  }
  return merged;
}

// Pointwise semantic equality via the joint cut refinement.
inline bool step_equal(const StepFamily& f, const StepFamily& g) {
  if (!(f.domain == g.domain)) return false;
  std::size_t fi = 0, gi = 0;
  while (fi < f.pieces.size() && gi < g.pieces.size()) {
    if (!(f.pieces[fi].value == g.pieces[gi].value)) return false;
    int c = cnf_cmp(f.pieces[fi].cut, g.pieces[gi].cut);
    if (c <= 0) ++fi;
    if (c >= 0) ++gi;
  }
  return fi == f.pieces.size() && gi == g.pieces.size();
}

// --------------------------------------------------------------------------
// Text syntax: w^2*3 + w + 5, with parenthesized compound exponents w^(w+1).
// --------------------------------------------------------------------------
inline std::string cnf_to_string(const CnfOrdinal& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const CnfTerm& t = a.terms[i];
    if (i) s += " + ";
    CnfOrdinal e;
    e.terms = t.exp;
    if (e.is_zero()) {
      s += std::to_string(t.coeff);
      continue;
    }
    s += "w";
    if (!(e == CnfOrdinal::finite(1))) {
      if (e.is_finite() && e.terms.size() == 1)
        s += "^" + std::to_string(e.finite_value());
      else if (e == CnfOrdinal::omega())
        s += "^w";
      else
        s += "^(" + cnf_to_string(e) + ")";
    }
    if (t.coeff != 1) s += "*" + std::to_string(t.coeff);
  }
  return s;
}

namespace detail {

struct CnfParser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && src[pos] == ' ') ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::int64_t number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && src[pos] >= '0' && src[pos] <= '9') ++pos;
    if (start == pos) throw std::invalid_argument("ordinal parse: expected number at " +
                                                  std::to_string(start));
    return std::stoll(std::string(src.substr(start, pos - start)));
  }

  CnfOrdinal parse_sum() {
    CnfOrdinal acc = parse_term();
    while (true) {
      skip_ws();
      if (!eat('+')) break;
      acc = cnf_add(acc, parse_term());
    }
    return acc;
  }

  CnfOrdinal parse_term() {
    skip_ws();
    if (pos < src.size() && src[pos] == 'w') {
      ++pos;
      CnfOrdinal e = CnfOrdinal::finite(1);
      if (eat('^')) {
        skip_ws();
        if (eat('(')) {
          e = parse_sum();
          if (!eat(')')) throw std::invalid_argument("ordinal parse: missing )");
        } else if (pos < src.size() && src[pos] == 'w') {
          ++pos;
          e = CnfOrdinal::omega();
        } else {
          e = CnfOrdinal::finite(number());
        }
      }
      std::int64_t c = 1;
      if (eat('*')) c = number();
      return CnfOrdinal::power(e, c);
    }
    return CnfOrdinal::finite(number());
  }
};

}  // namespace detail

inline CnfOrdinal cnf_parse(std::string_view text) {
  detail::CnfParser p{text};
  p.skip_ws();
  if (p.pos < text.size() && text[p.pos] == '0') {
    ++p.pos;
    p.skip_ws();
    if (p.pos == text.size()) return CnfOrdinal{};
    p.pos = 0;
  }
  CnfOrdinal r = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) throw std::invalid_argument("ordinal parse: trailing input");
  return r;
}

// --------------------------------------------------------------------------
// The Ord dependent adder: the flagship non-commutative instance.
// --------------------------------------------------------------------------
class OrdAdder {
public:
  using Elem = CnfOrdinal;
  using Point = CnfOrdinal;
  using Fiber = CnfOrdinal;  // the segment [0, alpha)
  using Family = StepFamily;
  struct FubiniWitness {
    std::string description;
    Elem lhs, rhs;
  };

  std::string name() const { return "ord"; }
  bool commutative() const { return false; }
  Elem unit() const { return CnfOrdinal::finite(1); }
  std::optional<Elem> zero() const { return CnfOrdinal{}; }

  Fiber fiber_of(const Elem& x) const { return x; }
  Family const_family(const Fiber& alpha, const Elem& c) const { return step_const(alpha, c); }
  Elem eval(const Family& f, const Point& i) const { return step_eval(f, i); }
  Elem sum(const Elem& alpha, const Family& f) const { return ord_sum(alpha, f); }
  Point flatten(const Elem& alpha, const Family& f, const Point& i, const Point& j) const {
    return ord_flatten_eval(alpha, f, i, j);
  }
  Family inner_family(const Elem&, const Family& f, const Family& g, const Point& i) const {
    return step_window(g, step_partial_sum(f, i), step_eval(f, i));
  }
  Family boxtimes(const Elem& alpha, const Family& f, const Family& g) const {
    return step_boxtimes(alpha, f, g);
  }
  Family scale_family(const Elem& y, const Family& f) const {
    Family r = f;
    for (auto& p : r.pieces) p.value = cnf_mul(y, p.value);
    return r;
  }

  bool equal_elem(const Elem& a, const Elem& b) const { return a == b; }
  bool equal_point(const Point& a, const Point& b) const { return a == b; }

  // Random CNF ordinal with exponent tower height <= 2: w^(w*a+b)*c + ... at
  // the generator level; small coefficients keep the checks readable.
  Elem gen_elem(Rng& rng) const {
    switch (rng.next_below(6)) {
      case 0:
        return CnfOrdinal::finite(rng.next_int(0, 6));
      case 1:
        return CnfOrdinal::finite(rng.next_int(1, 6));
      case 2: {
        CnfOrdinal r = CnfOrdinal::power(CnfOrdinal::finite(1), rng.next_int(1, 3));
        return cnf_add(r, CnfOrdinal::finite(rng.next_int(0, 4)));
      }
      case 3: {
        CnfOrdinal r = CnfOrdinal::power(CnfOrdinal::finite(2), rng.next_int(1, 2));
        if (rng.next_bool()) r = cnf_add(r, CnfOrdinal::power(CnfOrdinal::finite(1), 1));
        return cnf_add(r, CnfOrdinal::finite(rng.next_int(0, 3)));
      }
      case 4: {
        // tower height 2: w^(w+k)
        CnfOrdinal e = cnf_add(CnfOrdinal::omega(), CnfOrdinal::finite(rng.next_int(0, 2)));
        return cnf_add(CnfOrdinal::power(e, 1), CnfOrdinal::finite(rng.next_int(0, 2)));
      }
      default:
        return CnfOrdinal::omega();
    }
  }

  // Random ordinal strictly below alpha (non-uniform, exercises all shapes).
  Elem gen_below(Rng& rng, const Elem& alpha) const {
    if (alpha.is_zero()) throw std::invalid_argument("gen_below: empty segment");
    if (alpha.is_finite()) return CnfOrdinal::finite(rng.next_int(0, alpha.finite_value() - 1));
    for (int attempt = 0; attempt < 16; ++attempt) {
      Elem cand = gen_elem(rng);
      if (cnf_cmp(cand, alpha) < 0) return cand;
    }
    return CnfOrdinal{};
  }

  Family gen_family(Rng& rng, const Fiber& alpha) const {
    Family f;
    f.domain = alpha;
    if (alpha.is_zero()) return f;
    std::vector<CnfOrdinal> cuts;
    int extra = static_cast<int>(rng.next_below(3));
    for (int i = 0; i < extra; ++i) {
      CnfOrdinal c = gen_below(rng, alpha);
      if (!c.is_zero()) cuts.push_back(c);
    }
    cuts.push_back(alpha);
    std::sort(cuts.begin(), cuts.end(),
              [](const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_cmp(a, b) < 0; });
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](const CnfOrdinal& a, const CnfOrdinal& b) { return a == b; }),
               cuts.end());
    for (const auto& c : cuts) f.pieces.push_back({c, gen_elem(rng)});
    return f;
  }

  FubiniWitness fubini_counterexample() const {
    // Sum_{j<w} Sum_{i<2} 1 = 2·w = w, but swapped: Sum_{i<2} Sum_{j<w} 1 = w·2.
    CnfOrdinal two = CnfOrdinal::finite(2);
    CnfOrdinal w = CnfOrdinal::omega();
    Elem lhs = ord_sum(w, step_const(w, two));
    Elem rhs = ord_sum(two, step_const(two, w));
    return FubiniWitness{"x=2 y=w f=const 1", lhs, rhs};
  }

  std::vector<Point> sample_points(const Fiber& alpha, Rng& rng) const {
    std::vector<Point> ps;
    auto push = [&](const CnfOrdinal& p) {
      if (cnf_cmp(p, alpha) >= 0) return;
      for (const auto& q : ps)
        if (q == p) return;
      ps.push_back(p);
    };
    push(CnfOrdinal{});
    push(CnfOrdinal::finite(1));
    push(CnfOrdinal::finite(3));
    push(CnfOrdinal::omega());
    push(cnf_add(CnfOrdinal::omega(), CnfOrdinal::finite(2)));
    push(CnfOrdinal::power(CnfOrdinal::finite(2), 1));
    for (int i = 0; i < 3 && !alpha.is_zero(); ++i) push(gen_below(rng, alpha));
    return ps;
  }

  std::string show_elem(const Elem& x) const { return cnf_to_string(x); }
  std::string show_point(const Point& p) const { return cnf_to_string(p); }
  std::string show_family(const Family& f) const {
    std::string s = "step[";
    CnfOrdinal start;
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
      if (i) s += ", ";
      s += "[" + cnf_to_string(start) + "," + cnf_to_string(f.pieces[i].cut) + ")↦" +
           cnf_to_string(f.pieces[i].value);
      start = f.pieces[i].cut;
    }
    return s + "]";
  }
};

}  // namespace depsum
