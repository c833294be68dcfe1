#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "depsum/bigint.hpp"
#include "depsum/faulhaber.hpp"
#include "depsum/rng.hpp"

namespace depsum {

// Truncated q-adic integer: a residue modulo q^N plus a count of digits no
// longer trusted (q-valuation lost to division by powers of q while clearing
// Faulhaber denominators). Arithmetic is exact modulo q^(N - precision_loss).
class PadicInt {
public:
  PadicInt() = default;
  PadicInt(int q, int precision, std::uint64_t value, int loss = 0)
      : q_(q), n_(precision), loss_(loss), value_(value % pow_q(q, precision)) {}

  static std::uint64_t pow_q(int q, int e) {
    if (e < 0 || e > 27) throw std::overflow_error("padic: q-power exceeds 64 bits");
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(q);
    return r;
  }

  int prime() const { return q_; }
  int precision() const { return n_; }
  int precision_loss() const { return loss_; }
  int trusted_digits() const { return n_ - loss_; }
  std::uint64_t value() const { return value_; }

  int digit(int i) const {
    std::uint64_t v = value_;
    for (int k = 0; k < i; ++k) v /= static_cast<std::uint64_t>(q_);
    return static_cast<int>(v % static_cast<std::uint64_t>(q_));
  }

  bool congruent(const PadicInt& o, int digits) const {
    std::uint64_t m = pow_q(q_, digits);
    return q_ == o.q_ && value_ % m == o.value_ % m;
  }

  // equality on shared trusted digits; fewer than `min_digits` shared is a
  // precision failure, not an answer
  bool trusted_equal(const PadicInt& o, int min_digits = 8) const {
    int shared = std::min(trusted_digits(), o.trusted_digits());
    if (shared < min_digits)
      throw std::runtime_error("padic: precision exhausted, raise the working precision");
    return congruent(o, shared);
  }

  std::string to_string() const {
    std::string s;
    for (int i = n_ - 1; i >= 0; --i) s += static_cast<char>('0' + digit(i));
    s += " (base " + std::to_string(q_) + ")";
    if (loss_) s += " [loss " + std::to_string(loss_) + "]";
    return s;
  }

  // exactly N digits, most significant first: "0011 (base 2)"
  static PadicInt from_string(std::string_view s) {
    auto sp = s.find(' ');
    if (sp == std::string_view::npos) throw std::invalid_argument("padic parse: missing base");
    std::string_view digits = s.substr(0, sp);
    std::string_view rest = s.substr(sp);
    int q = 0;
    if (rest.starts_with(" (base ") && rest.ends_with(")"))
      q = std::stoi(std::string(rest.substr(7, rest.size() - 8)));
    else
      throw std::invalid_argument("padic parse: bad base suffix");
    if (q < 2) throw std::invalid_argument("padic parse: bad base");
    std::uint64_t v = 0;
    for (char c : digits) {
      if (c < '0' || c >= '0' + q) throw std::invalid_argument("padic parse: bad digit");
      v = v * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(c - '0');
    }
    return PadicInt(q, static_cast<int>(digits.size()), v);
  }

  friend PadicInt operator+(const PadicInt& a, const PadicInt& b) {
    a.check_compat(b);
    std::uint64_t m = pow_q(a.q_, a.n_);
    return PadicInt(a.q_, a.n_, (a.value_ + b.value_) % m, std::max(a.loss_, b.loss_));
  }
  friend PadicInt operator-(const PadicInt& a, const PadicInt& b) {
    a.check_compat(b);
    std::uint64_t m = pow_q(a.q_, a.n_);
    return PadicInt(a.q_, a.n_, (a.value_ + m - b.value_) % m, std::max(a.loss_, b.loss_));
  }
  friend PadicInt operator*(const PadicInt& a, const PadicInt& b) {
    a.check_compat(b);
    std::uint64_t m = pow_q(a.q_, a.n_);
    unsigned __int128 prod = static_cast<unsigned __int128>(a.value_) * b.value_;
    return PadicInt(a.q_, a.n_, static_cast<std::uint64_t>(prod % m),
                    std::max(a.loss_, b.loss_));
  }

  // division by q^e; the residue must be divisible, which integrality of the
  // represented value guarantees
  PadicInt shift_div(int e) const {
    if (e == 0) return *this;
    std::uint64_t qe = pow_q(q_, e);
    if (value_ % qe != 0)
      throw std::logic_error("padic: shift_div on a non-divisible residue");
    return PadicInt(q_, n_, value_ / qe, loss_ + e);
  }

private:
  int q_ = 2;
  int n_ = 16;
  int loss_ = 0;
  std::uint64_t value_ = 0;

  void check_compat(const PadicInt& o) const {
    if (q_ != o.q_ || n_ != o.n_) throw std::invalid_argument("padic: mixed q or precision");
  }
};

namespace detail {

inline std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, base = b % m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

// inverse of a unit modulo q^n: phi(q^n) = q^{n-1}(q-1)
inline std::uint64_t unit_inverse(std::uint64_t a, int q, int n) {
  std::uint64_t m = PadicInt::pow_q(q, n);
  std::uint64_t phi = m / static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(q - 1);
  return mod_pow(a % m, phi - 1, m);
}

inline std::uint64_t bigint_mod_u64(const BigInt& v, std::uint64_t m) {
  BigInt r = v % BigInt(static_cast<std::int64_t>(m));
  std::int64_t x = r.to_i64();
  if (x < 0) x += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(x);
}

}  // namespace detail

// Polynomial family i ↦ (sum_k c_k i^k) / q^vshift. Generated families have
// vshift 0; derived families (partial sums, ⊠) carry the q-power denominator
// left over from clearing Faulhaber coefficients, divided out value-wise.
struct PadicPolyFamily {
  std::vector<PadicInt> coeffs;
  int vshift = 0;

  PadicInt eval(const PadicInt& x) const {
    if (coeffs.empty()) throw std::invalid_argument("padic family: no coefficients");
    PadicInt acc(x.prime(), x.precision(), 0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc.shift_div(vshift);
  }

  int degree() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1; }
};

namespace detail {

// reduce a univariate rational polynomial to residue coefficients over a
// common q-power denominator: p = (integer polynomial mod q^n) / q^vshift
struct ReducedPoly {
  std::vector<PadicInt> coeffs;
  int vshift = 0;
};

inline ReducedPoly reduce_rational_poly(const RationalPoly& p, int q, int n) {
  std::uint64_t m = PadicInt::pow_q(q, n);
  BigInt common(1);
  for (const auto& [e, c] : p.terms()) common = common / BigInt::gcd(common, c.den()) * c.den();
  int v = 0;
  BigInt unit = common;
  while ((unit % BigInt(q)).is_zero()) {
    unit = unit / BigInt(q);
    ++v;
  }
  if (v >= n) throw std::runtime_error("padic: denominator exceeds working precision");
  std::uint64_t inv_unit = unit_inverse(bigint_mod_u64(unit, m), q, n);
  ReducedPoly out;
  out.vshift = v;
  int deg = std::max(p.degree(kVarX), 0);
  out.coeffs.assign(static_cast<std::size_t>(deg + 1), PadicInt(q, n, 0));
  for (const auto& [e, c] : p.terms()) {
    BigInt scaled_num = c.num() * (common / c.den());
    std::uint64_t num_mod = bigint_mod_u64(scaled_num, m);
    std::uint64_t val = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(num_mod) * inv_unit % m);
    out.coeffs[static_cast<std::size_t>(e[kVarX])] =
        out.coeffs[static_cast<std::size_t>(e[kVarX])] + PadicInt(q, n, val);
  }
  return out;
}

}  // namespace detail

// Sum_{i=1}^{x} f(i) = sum_k c_k F_k(x), computed through the Faulhaber
// polynomials with denominators cleared against q^N and divided out at value
// level; integrality of F_k on Z guarantees the divisions succeed.
inline PadicInt padic_sum(const PadicInt& x, const PadicPolyFamily& f) {
  int q = x.prime(), n = x.precision();
  if (f.vshift) {
    // Sum (N(i)/q^v) = (Sum N(i)) / q^v
    PadicInt s = padic_sum(x, PadicPolyFamily{f.coeffs, 0});
    PadicInt result = s.shift_div(f.vshift);
    if (result.trusted_digits() < 4)
      throw std::runtime_error("padic_sum: precision exhausted, raise the working precision");
    return result;
  }
  PadicInt acc(q, n, 0, x.precision_loss());
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    detail::ReducedPoly fk =
        detail::reduce_rational_poly(faulhaber_poly(static_cast<int>(k)), q, n);
    PadicInt num(q, n, 0);
    for (std::size_t d = fk.coeffs.size(); d-- > 0;) num = num * x + fk.coeffs[d];
    acc = acc + f.coeffs[k] * num.shift_div(fk.vshift);
  }
  if (acc.trusted_digits() < 4)
    throw std::runtime_error("padic_sum: precision exhausted, raise the working precision");
  return acc;
}

// f^♭(i, j) = j + Sum^{i-1} f
inline PadicInt padic_flatten(const PadicInt&, const PadicPolyFamily& f, const PadicInt& i,
                              const PadicInt& j) {
  PadicInt one(i.prime(), i.precision(), 1);
  return j + padic_sum(i - one, f);
}

// Test oracle: exact integer partial sums at the truncations x_n = x mod q^n,
// summed over Z by divide-and-conquer with polynomial shifts. Shares nothing
// with the Faulhaber route. `stable_digits` is the agreement between the last
// two stages.
struct PadicLimitResult {
  PadicInt value;
  int stable_digits = 0;
};

namespace detail {

inline BigInt exact_poly_eval(const std::vector<BigInt>& p, const BigInt& at) {
  BigInt acc(0);
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * at + p[k];
  return acc;
}

// exact Sum_{i=1}^{m} p(i) via halving:
//   Sum_{1..2h} p = Sum_{1..h} [p(i) + p(i+h)], one recursive call of half size
inline BigInt exact_poly_sum(const std::vector<BigInt>& p, const BigInt& m) {
  if (m.is_zero()) return BigInt(0);
  auto [half, parity] = BigInt::divmod(m, BigInt(2));
  if (!parity.is_zero()) return exact_poly_eval(p, m) + exact_poly_sum(p, m - BigInt(1));
  std::vector<BigInt> combined = p;  // p(X) + p(X+h)
  for (std::size_t k = 0; k < p.size(); ++k) {
    BigInt binom(1), power(1);
    for (std::size_t j = 0; j <= k; ++j) {
      combined[k - j] = combined[k - j] + p[k] * binom * power;
      binom = binom * BigInt(static_cast<std::int64_t>(k - j)) /
              BigInt(static_cast<std::int64_t>(j + 1));
      power = power * half;
    }
  }
  return exact_poly_sum(combined, half);
}

}  // namespace detail

inline PadicLimitResult padic_sum_limit_oracle(const PadicInt& x, const PadicPolyFamily& f,
                                               int n_max = 12) {
  if (f.vshift != 0)
    throw std::invalid_argument("padic_sum_limit_oracle: only plain integer families");
  int q = x.prime(), n = x.precision();
  std::vector<BigInt> lifted;
  for (const auto& c : f.coeffs)
    lifted.push_back(BigInt(static_cast<std::int64_t>(c.value())));
  auto partial = [&](int stage) {
    std::uint64_t xn = x.value() % PadicInt::pow_q(q, stage);
    BigInt exact = detail::exact_poly_sum(lifted, BigInt(static_cast<std::int64_t>(xn)));
    return PadicInt(q, n, detail::bigint_mod_u64(exact, PadicInt::pow_q(q, n)));
  };
  PadicInt prev = partial(n_max - 1);
  PadicInt last = partial(n_max);
  int stable = 0;
  while (stable < n && last.congruent(prev, stable + 1)) ++stable;
  return PadicLimitResult{last, stable};
}

// ---------------------------------------------------------------------------
// The Z_q adder.
// ---------------------------------------------------------------------------
class PadicAdder {
public:
  using Elem = PadicInt;
  using Point = PadicInt;
  struct Fiber {};  // all of Z_q, sampled
  using Family = PadicPolyFamily;
  struct Family2 {
    std::vector<std::vector<PadicInt>> coeffs;  // sum_{k,l} c_{k,l} i^k j^l
  };

  explicit PadicAdder(int q, int precision = 24, int min_trusted = 8)
      : q_(q), n_(precision), min_trusted_(min_trusted) {}

  std::string name() const { return "padic" + std::to_string(q_); }
  int prime() const { return q_; }
  int precision() const { return n_; }
  bool commutative() const { return true; }
  Elem unit() const { return PadicInt(q_, n_, 1); }
  std::optional<Elem> zero() const { return PadicInt(q_, n_, 0); }

  Fiber fiber_of(const Elem&) const { return {}; }
  Family const_family(const Fiber&, const Elem& c) const { return Family{{c}, 0}; }
  Elem eval(const Family& f, const Point& i) const { return f.eval(i); }
  Elem sum(const Elem& x, const Family& f) const { return padic_sum(x, f); }
  Point flatten(const Elem& x, const Family& f, const Point& i, const Point& j) const {
    return padic_flatten(x, f, i, j);
  }

  // (g ∘ f^♭)|_i (j) = g(j + Sum^{i-1} f): Taylor shift of g's numerator
  Family inner_family(const Elem&, const Family& f, const Family& g, const Point& i) const {
    PadicInt base = padic_sum(i - unit(), f);
    Family out;
    out.vshift = g.vshift;
    out.coeffs.assign(g.coeffs.size(), PadicInt(q_, n_, 0));
    for (std::size_t k = 0; k < g.coeffs.size(); ++k) {
      PadicInt power(q_, n_, 1);
      for (std::size_t j = 0; j <= k; ++j) {
        PadicInt binom(q_, n_, binomial_u64(k, j));
        out.coeffs[k - j] = out.coeffs[k - j] + g.coeffs[k] * binom * power;
        power = power * base;
      }
    }
    return out;
  }

  // f ⊠ g = (Sum_Y g(Y + C(X))) at Y := f(X), all coefficient vectors over a
  // common q-power denominator
  Family boxtimes(const Elem&, const Family& f, const Family& g) const {
    // C(X) = Sum^{X-1} f = C'(X) / q^{vc}
    auto [cnum, cv] = partial_sum_poly(f);
    // g(Y + C'/q^{vc}) over denominator q^{g.vshift + vc*dg}:
    //   sum_k g_k q^{vc(dg-k)} (q^{vc} Y + C')^k
    int dg = g.degree();
    GridPoly gy = compose_shift(g, cnum, cv, dg);
    // Sum_Y over denominator q^{gy.vshift + v2}
    GridPoly summed = sum_in_y(gy);
    // substitute Y := f = N_f / q^{f.vshift}
    return substitute_y(summed, f);
  }

  Family scale_family(const Elem& y, const Family& f) const {
    Family r = f;
    for (auto& cv : r.coeffs) cv = cv * y;
    return r;
  }

  bool equal_elem(const Elem& a, const Elem& b) const {
    return a.trusted_equal(b, min_trusted_);
  }
  bool equal_point(const Point& a, const Point& b) const {
    return a.trusted_equal(b, min_trusted_);
  }

  Elem gen_elem(Rng& rng) const {
    return PadicInt(q_, n_, rng.next_u64() % PadicInt::pow_q(q_, n_));
  }
  Family gen_family(Rng& rng, const Fiber&) const {
    Family f;
    int deg = static_cast<int>(rng.next_below(3));
    for (int k = 0; k <= deg; ++k) f.coeffs.push_back(small_coeff(rng));
    return f;
  }
  Family2 gen_family2(Rng& rng, const Fiber&, const Fiber&) const {
    Family2 f2;
    for (int k = 0; k <= 2; ++k) {
      f2.coeffs.emplace_back();
      for (int l = 0; l <= 2; ++l) f2.coeffs.back().push_back(small_coeff(rng));
    }
    return f2;
  }
  Family2 swap2(const Family2& f2) const {
    Family2 r;
    std::size_t rows = f2.coeffs.size(), cols = rows ? f2.coeffs[0].size() : 0;
    r.coeffs.assign(cols, std::vector<PadicInt>(rows, PadicInt(q_, n_, 0)));
    for (std::size_t k = 0; k < rows; ++k)
      for (std::size_t l = 0; l < cols; ++l) r.coeffs[l][k] = f2.coeffs[k][l];
    return r;
  }
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    std::size_t cols = f2.coeffs.empty() ? 0 : f2.coeffs[0].size();
    Family out;
    for (std::size_t l = 0; l < cols; ++l) {
      Family column;
      for (std::size_t k = 0; k < f2.coeffs.size(); ++k) column.coeffs.push_back(f2.coeffs[k][l]);
      out.coeffs.push_back(padic_sum(x, column));
    }
    return out;
  }

  std::vector<Point> sample_points(const Fiber&, Rng& rng) const {
    std::vector<Point> ps;
    for (std::uint64_t v : {0ull, 1ull, 2ull, 5ull}) ps.push_back(PadicInt(q_, n_, v));
    ps.push_back(PadicInt(q_, n_, PadicInt::pow_q(q_, n_) - 1));  // -1: all max digits
    for (int i = 0; i < 3; ++i) ps.push_back(PadicInt(q_, n_, rng.next_u64() % 1000));
    return ps;
  }

  std::string show_elem(const Elem& x) const { return x.to_string(); }
  std::string show_point(const Point& p) const { return p.to_string(); }
  std::string show_family(const Family& f) const {
    std::string s = "poly[";
    for (std::size_t k = 0; k < f.coeffs.size(); ++k)
      s += (k ? "; " : "") + std::to_string(f.coeffs[k].value()) + "*i^" + std::to_string(k);
    if (f.vshift) s += " /q^" + std::to_string(f.vshift);
    return s + "]";
  }
  std::string show_family2(const Family2& f2) const {
    std::string s = "poly2[";
    for (std::size_t k = 0; k < f2.coeffs.size(); ++k)
      for (std::size_t l = 0; l < f2.coeffs[k].size(); ++l)
        s += std::to_string(f2.coeffs[k][l].value()) + "*i^" + std::to_string(k) + "j^" +
             std::to_string(l) + " ";
    return s + "]";
  }

private:
  int q_, n_, min_trusted_;

  struct GridPoly {
    std::vector<std::vector<PadicInt>> rows;  // rows[l][d]: Y^l X^d
    int vshift = 0;
  };

  PadicInt small_coeff(Rng& rng) const {
    std::uint64_t m = PadicInt::pow_q(q_, n_);
    std::int64_t v = rng.next_int(-6, 6);
    std::uint64_t uv = v >= 0 ? static_cast<std::uint64_t>(v) : m - static_cast<std::uint64_t>(-v);
    return PadicInt(q_, n_, uv);
  }

  static std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
    std::uint64_t r = 1;
    for (std::size_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
  }

  // C'(X), vc with Sum^{X-1} f = C'(X)/q^{vc + f.vshift}
  std::pair<std::vector<PadicInt>, int> partial_sum_poly(const Family& f) const {
    RationalPoly xm1 = RationalPoly::variable(kVarX) - RationalPoly::constant(Rational(1));
    std::vector<detail::ReducedPoly> reduced;
    int vmax = 0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
      auto r = detail::reduce_rational_poly(
          faulhaber_poly(static_cast<int>(k)).substitute(kVarX, xm1), q_, n_);
      vmax = std::max(vmax, r.vshift);
      reduced.push_back(std::move(r));
    }
    std::size_t deg = 1;
    for (const auto& r : reduced) deg = std::max(deg, r.coeffs.size());
    std::vector<PadicInt> out(deg, PadicInt(q_, n_, 0));
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      std::uint64_t scale = PadicInt::pow_q(q_, vmax - reduced[k].vshift);
      for (std::size_t d = 0; d < reduced[k].coeffs.size(); ++d)
        out[d] = out[d] + f.coeffs[k] * reduced[k].coeffs[d] * PadicInt(q_, n_, scale);
    }
    return {out, vmax + f.vshift};
  }

  // g(Y + C'/q^{vc}) = [sum_k g_k q^{vc(dg-k)} (q^{vc} Y + C')^k] / q^{g.vshift + vc*dg}
  GridPoly compose_shift(const Family& g, const std::vector<PadicInt>& c, int vc, int dg) const {
    std::size_t cd = c.size();
    std::size_t maxd = static_cast<std::size_t>(dg) * (cd ? cd - 1 : 0) + 1;
    GridPoly acc;
    acc.vshift = g.vshift + vc * dg;
    acc.rows.assign(static_cast<std::size_t>(dg) + 1,
                    std::vector<PadicInt>(maxd + 1, PadicInt(q_, n_, 0)));
    PadicInt qvc(q_, n_, PadicInt::pow_q(q_, vc));
    // powers of (q^{vc} Y + C')
    std::vector<std::vector<std::vector<PadicInt>>> pow;
    pow.push_back({{PadicInt(q_, n_, 1)}});
    for (int p = 1; p <= dg; ++p) {
      const auto& prev = pow.back();
      std::vector<std::vector<PadicInt>> cur(static_cast<std::size_t>(p) + 1,
                                             std::vector<PadicInt>(maxd + 1, PadicInt(q_, n_, 0)));
      for (std::size_t l = 0; l < prev.size(); ++l)
        for (std::size_t d = 0; d < prev[l].size(); ++d) {
          if (prev[l][d].value() == 0) continue;  // nonzero entries stay within maxd
          cur[l + 1][d] = cur[l + 1][d] + prev[l][d] * qvc;
          for (std::size_t e = 0; e < cd; ++e)
            cur[l][d + e] = cur[l][d + e] + prev[l][d] * c[e];
        }
      pow.push_back(cur);
    }
    for (std::size_t k = 0; k < g.coeffs.size(); ++k) {
      PadicInt scale(q_, n_,
                     PadicInt::pow_q(q_, vc * (dg - static_cast<int>(k))));
      for (std::size_t l = 0; l < pow[k].size(); ++l)
        for (std::size_t d = 0; d < pow[k][l].size(); ++d)
          acc.rows[l][d] = acc.rows[l][d] + g.coeffs[k] * scale * pow[k][l][d];
    }
    return acc;
  }

  // Sum_Y (sum_l a_l(X) Y^l) = sum_l a_l(X) F_l(Y), denominators re-cleared
  GridPoly sum_in_y(const GridPoly& gy) const {
    std::vector<detail::ReducedPoly> fl;
    int vmax = 0;
    for (std::size_t l = 0; l < gy.rows.size(); ++l) {
      auto r = detail::reduce_rational_poly(faulhaber_poly(static_cast<int>(l)), q_, n_);
      vmax = std::max(vmax, r.vshift);
      fl.push_back(std::move(r));
    }
    GridPoly out;
    out.vshift = gy.vshift + vmax;
    std::size_t xd = gy.rows.empty() ? 1 : gy.rows[0].size();
    out.rows.assign(gy.rows.size() + 2, std::vector<PadicInt>(xd, PadicInt(q_, n_, 0)));
    for (std::size_t l = 0; l < gy.rows.size(); ++l) {
      std::uint64_t scale = PadicInt::pow_q(q_, vmax - fl[l].vshift);
      for (std::size_t yl = 0; yl < fl[l].coeffs.size(); ++yl)
        for (std::size_t d = 0; d < gy.rows[l].size(); ++d)
          out.rows[yl][d] =
              out.rows[yl][d] + fl[l].coeffs[yl] * PadicInt(q_, n_, scale) * gy.rows[l][d];
    }
    return out;
  }

  // substitute Y := f = N_f/q^{vf}: multiply row l by N_f^l q^{vf(L-l)} over
  // denominator q^{p.vshift + vf*L}
  Family substitute_y(const GridPoly& p, const Family& f) const {
    int L = static_cast<int>(p.rows.size()) - 1;
    std::size_t fd = f.coeffs.size() ? f.coeffs.size() - 1 : 0;
    std::size_t xd = p.rows.empty() ? 0 : p.rows[0].size() - 1;
    Family out;
    out.vshift = p.vshift + f.vshift * L;
    out.coeffs.assign(xd + fd * static_cast<std::size_t>(L) + 1, PadicInt(q_, n_, 0));
    std::vector<std::vector<PadicInt>> fpow{{PadicInt(q_, n_, 1)}};
    for (int l = 1; l <= L; ++l) {
      const auto& prev = fpow.back();
      std::vector<PadicInt> cur(prev.size() + fd, PadicInt(q_, n_, 0));
      for (std::size_t i = 0; i < prev.size(); ++i)
        for (std::size_t j = 0; j < f.coeffs.size(); ++j)
          cur[i + j] = cur[i + j] + prev[i] * f.coeffs[j];
      fpow.push_back(cur);
    }
    for (int l = 0; l <= L; ++l) {
      PadicInt scale(q_, n_, PadicInt::pow_q(q_, f.vshift * (L - l)));
      for (std::size_t d = 0; d < p.rows[static_cast<std::size_t>(l)].size(); ++d)
        for (std::size_t e = 0; e < fpow[static_cast<std::size_t>(l)].size(); ++e)
          out.coeffs[d + e] = out.coeffs[d + e] + p.rows[static_cast<std::size_t>(l)][d] *
                                                      scale * fpow[static_cast<std::size_t>(l)][e];
    }
    return out;
  }
};

}  // namespace depsum
