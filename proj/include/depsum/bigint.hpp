#pragma once

#include <cstdint>
#include <cstdlib>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace depsum {

// Sign-magnitude arbitrary precision integer, base 1e9 limbs.
// Covers exactly what the exact kernels need: ring ops, divmod, gcd, pow.
class BigInt {
public:
  BigInt() = default;
  BigInt(std::int64_t v) {
    if (v < 0) {
      neg_ = true;
      // avoid overflow on INT64_MIN
      std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
      assign_u64(m);
    } else {
      assign_u64(static_cast<std::uint64_t>(v));
    }
  }

  static BigInt from_string(std::string_view s) {
    BigInt r;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty literal");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
      r = r.mul_small(10);
      r = r + BigInt(s[i] - '0');
    }
    r.neg_ = neg && !r.is_zero();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return neg_; }
  int signum() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

  BigInt operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
  }

  BigInt abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) {
      BigInt r;
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_ && !r.limbs_.empty();
      return r;
    }
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt();
    BigInt r;
    if (c > 0) {
      r.limbs_ = sub_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_;
    } else {
      r.limbs_ = sub_mag(b.limbs_, a.limbs_);
      r.neg_ = b.neg_;
    }
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                            r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
      }
      std::size_t k = i + b.limbs_.size();
      while (carry) {
        std::uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
        ++k;
      }
    }
    r.trim();
    r.neg_ = (a.neg_ != b.neg_) && !r.is_zero();
    return r;
  }

  // Truncated division (rounds toward zero), like built-in integer division.
  struct DivMod;
  static DivMod divmod(const BigInt& a, const BigInt& b);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (a.neg_) c = -c;
    return c <=> 0;
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a.neg_ = b.neg_ = false;
    while (!b.is_zero()) {
      BigInt r = a % b;
      a = b;
      b = r;
    }
    return a;
  }

  static BigInt pow(BigInt base, unsigned e) {
    BigInt r(1);
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  // Only valid when the value fits; large values throw.
  std::int64_t to_i64() const {
    std::int64_t r = 0;
    if (limbs_.size() > 3) throw std::overflow_error("BigInt: to_i64 overflow");
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      if (r > (INT64_MAX - static_cast<std::int64_t>(limbs_[i])) / static_cast<std::int64_t>(kBase))
        throw std::overflow_error("BigInt: to_i64 overflow");
      r = r * kBase + limbs_[i];
    }
    return neg_ ? -r : r;
  }

  double to_double() const {
    double r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * kBase + limbs_[i];
    return neg_ ? -r : r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s = neg_ ? "-" : "";
    s += std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
      std::string part = std::to_string(limbs_[i]);
      s += std::string(9 - part.size(), '0') + part;
    }
    return s;
  }

private:
  static constexpr std::uint32_t kBase = 1000000000u;
  std::vector<std::uint32_t> limbs_;  // little endian, no trailing zero limbs
  bool neg_ = false;

  void assign_u64(std::uint64_t v) {
    limbs_.clear();
    while (v) {
      limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
      v /= kBase;
    }
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
  }

  BigInt mul_small(std::uint32_t m) const {
    BigInt r;
    if (m == 0 || is_zero()) return r;
    std::uint64_t carry = 0;
    r.limbs_.reserve(limbs_.size() + 1);
    for (std::uint32_t limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
      r.limbs_.push_back(static_cast<std::uint32_t>(cur % kBase));
      carry = cur / kBase;
    }
    while (carry) {
      r.limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
      carry /= kBase;
    }
    r.neg_ = neg_;
    return r;
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
      std::uint64_t cur = carry;
      if (i < a.size()) cur += a[i];
      if (i < b.size()) cur += b[i];
      r.push_back(static_cast<std::uint32_t>(cur % kBase));
      carry = static_cast<std::uint32_t>(cur / kBase);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
      if (cur < 0) {
        cur += kBase;
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<std::uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
};

struct BigInt::DivMod {
  BigInt quot, rem;
};

inline BigInt::DivMod BigInt::divmod(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
  DivMod out;
  int c = cmp_mag(a.limbs_, b.limbs_);
  if (c < 0) {
    out.rem = a;
    return out;
  }
  if (b.limbs_.size() == 1) {
    std::uint64_t d = b.limbs_[0];
    std::uint64_t rem = 0;
    out.quot.limbs_.assign(a.limbs_.size(), 0);
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      std::uint64_t cur = rem * kBase + a.limbs_[i];
      out.quot.limbs_[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    out.quot.trim();
    if (rem) out.rem.limbs_.push_back(static_cast<std::uint32_t>(rem));
  } else {
    BigInt rem;
    BigInt babs = b.abs();
    out.quot.limbs_.assign(a.limbs_.size(), 0);
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      rem.limbs_.insert(rem.limbs_.begin(), a.limbs_[i]);
      rem.trim();
      // binary search the quotient limb
      std::uint32_t lo = 0, hi = kBase - 1, q = 0;
      while (lo <= hi) {
        std::uint32_t mid = lo + (hi - lo) / 2;
        if (cmp_mag(babs.mul_small(mid).limbs_, rem.limbs_) <= 0) {
          q = mid;
          lo = mid + 1;
        } else {
          if (mid == 0) break;
          hi = mid - 1;
        }
      }
      out.quot.limbs_[i] = q;
      if (q) rem = BigInt{rem} - babs.mul_small(q);
    }
    out.quot.trim();
    out.rem = rem;
  }
  out.quot.neg_ = (a.neg_ != b.neg_) && !out.quot.is_zero();
  out.rem.neg_ = a.neg_ && !out.rem.is_zero();
  return out;
}

inline BigInt operator/(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).quot; }
inline BigInt operator%(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).rem; }

}  // namespace depsum
