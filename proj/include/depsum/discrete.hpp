#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "depsum/rng.hpp"

namespace depsum {

// ---------------------------------------------------------------------------
// Natural numbers: fiber of n is [n] = {1..n}, sums are ordinary finite sums,
// flatten(i,j) = j + f(1) + ... + f(i-1).
// ---------------------------------------------------------------------------
class NatAdder {
public:
  using Elem = std::int64_t;
  using Point = std::int64_t;  // 1-based index into the fiber
  using Fiber = std::int64_t;  // fiber of n is [n]
  struct Family {
    std::vector<std::int64_t> table;  // table[i-1] = f(i)
  };
  struct Family2 {
    std::int64_t nx = 0, ny = 0;
    std::vector<std::vector<std::int64_t>> grid;  // grid[i-1][j-1]
  };

  std::string name() const { return "nat"; }
  bool commutative() const { return true; }
  Elem unit() const { return 1; }
  std::optional<Elem> zero() const { return 0; }

  Fiber fiber_of(const Elem& x) const {
    if (x < 0) throw std::invalid_argument("nat: negative element");
    return x;
  }

  Family const_family(const Fiber& n, const Elem& c) const {
    return Family{std::vector<std::int64_t>(static_cast<std::size_t>(n), c)};
  }

  Elem eval(const Family& f, const Point& i) const {
    if (i < 1 || i > static_cast<Point>(f.table.size()))
      throw std::out_of_range("nat: family index");
    return f.table[static_cast<std::size_t>(i - 1)];
  }

  Elem sum(const Elem& x, const Family& f) const {
    if (static_cast<Elem>(f.table.size()) != x)
      throw std::invalid_argument("nat: family length != x");
    Elem acc = 0;
    for (Elem v : f.table) acc += v;
    return acc;
  }

  Point flatten(const Elem& x, const Family& f, const Point& i, const Point& j) const {
    if (i < 1 || i > x) throw std::out_of_range("nat: flatten outer index");
    if (j < 1 || j > eval(f, i)) throw std::out_of_range("nat: flatten inner index");
    Elem acc = 0;
    for (Point k = 1; k < i; ++k) acc += eval(f, k);
    return j + acc;
  }

  Family inner_family(const Elem& x, const Family& f, const Family& g, const Point& i) const {
    Family r;
    Elem fi = eval(f, i);
    r.table.reserve(static_cast<std::size_t>(fi));
    for (Point j = 1; j <= fi; ++j) r.table.push_back(eval(g, flatten(x, f, i, j)));
    return r;
  }

  Family boxtimes(const Elem& x, const Family& f, const Family& g) const {
    Family r;
    r.table.reserve(f.table.size());
    for (Point i = 1; i <= x; ++i) {
      Elem fi = eval(f, i);
      r.table.push_back(sum(fi, inner_family(x, f, g, i)));
    }
    return r;
  }

  Family scale_family(const Elem& y, const Family& f) const {
    Family r = f;
    for (auto& v : r.table) v *= y;
    return r;
  }

  bool equal_elem(const Elem& a, const Elem& b) const { return a == b; }
  bool equal_point(const Point& a, const Point& b) const { return a == b; }

  Elem gen_elem(Rng& rng) const { return rng.next_int(0, 8); }
  Family gen_family(Rng& rng, const Fiber& n) const {
    Family f;
    f.table.reserve(static_cast<std::size_t>(n));
    for (Fiber i = 0; i < n; ++i) f.table.push_back(rng.next_int(0, 5));
    return f;
  }

  Family2 gen_family2(Rng& rng, const Fiber& nx, const Fiber& ny) const {
    Family2 f2;
    f2.nx = nx;
    f2.ny = ny;
    f2.grid.assign(static_cast<std::size_t>(nx),
                   std::vector<std::int64_t>(static_cast<std::size_t>(ny)));
    for (auto& row : f2.grid)
      for (auto& v : row) v = rng.next_int(0, 5);
    return f2;
  }
  Family2 swap2(const Family2& f2) const {
    Family2 r;
    r.nx = f2.ny;
    r.ny = f2.nx;
    r.grid.assign(static_cast<std::size_t>(f2.ny),
                  std::vector<std::int64_t>(static_cast<std::size_t>(f2.nx)));
    for (std::size_t i = 0; i < f2.grid.size(); ++i)
      for (std::size_t j = 0; j < f2.grid[i].size(); ++j) r.grid[j][i] = f2.grid[i][j];
    return r;
  }
  // family over the second fiber: j ↦ Sum^x f2(·, j)
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    Family r;
    r.table.assign(static_cast<std::size_t>(f2.ny), 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(x); ++i)
      for (std::size_t j = 0; j < r.table.size(); ++j) r.table[j] += f2.grid[i][j];
    return r;
  }

  std::vector<Point> sample_points(const Fiber& n, Rng&) const {
    std::vector<Point> ps;
    for (Point i = 1; i <= n; ++i) ps.push_back(i);
    return ps;
  }

  std::string show_elem(const Elem& x) const { return std::to_string(x); }
  std::string show_point(const Point& p) const { return std::to_string(p); }
  std::string show_family(const Family& f) const {
    std::string s = "[";
    for (std::size_t i = 0; i < f.table.size(); ++i)
      s += (i ? "," : "") + std::to_string(f.table[i]);
    return s + "]";
  }
  std::string show_family2(const Family2& f2) const {
    std::string s = "[";
    for (std::size_t i = 0; i < f2.grid.size(); ++i)
      s += (i ? ";" : "") + show_family(Family{f2.grid[i]});
    return s + "]";
  }
};

// Convenience wrappers named after the operations they expose.
inline std::int64_t nat_sum(std::int64_t x, const std::vector<std::int64_t>& table) {
  return NatAdder{}.sum(x, NatAdder::Family{table});
}
inline std::int64_t nat_flatten(std::int64_t x, const std::vector<std::int64_t>& table,
                                std::int64_t i, std::int64_t j) {
  return NatAdder{}.flatten(x, NatAdder::Family{table}, i, j);
}

// ---------------------------------------------------------------------------
// Integers: fibers are the whole line (sampled on a symmetric window); sums of
// negative extents flip sign and read indices 1-i.
// ---------------------------------------------------------------------------
class IntAdder {
public:
  using Elem = std::int64_t;
  using Point = std::int64_t;
  struct Fiber {};  // the full integer line
  struct Family {
    std::function<std::int64_t(std::int64_t)> fn;
    std::string desc;
  };
  struct Family2 {
    std::function<std::int64_t(std::int64_t, std::int64_t)> fn;
    std::string desc;
  };

  explicit IntAdder(std::int64_t window = 8) : window_(window) {}

  std::string name() const { return "int"; }
  bool commutative() const { return true; }
  Elem unit() const { return 1; }
  std::optional<Elem> zero() const { return 0; }
  Fiber fiber_of(const Elem&) const { return {}; }

  Family const_family(const Fiber&, const Elem& c) const {
    return Family{[c](std::int64_t) { return c; }, "const " + std::to_string(c)};
  }
  Elem eval(const Family& f, const Point& i) const { return f.fn(i); }

  Elem sum(const Elem& x, const Family& f) const {
    Elem acc = 0;
    if (x >= 0) {
      for (Elem i = 1; i <= x; ++i) acc += f.fn(i);
    } else {
      for (Elem i = 1; i <= -x; ++i) acc -= f.fn(1 - i);
    }
    return acc;
  }

  Point flatten(const Elem&, const Family& f, const Point& i, const Point& j) const {
    return j + sum(i - 1, f);
  }

  Family inner_family(const Elem&, const Family& f, const Family& g, const Point& i) const {
    Elem base = sum(i - 1, f);
    auto gf = g.fn;
    return Family{[gf, base](std::int64_t j) { return gf(j + base); },
                  "(" + g.desc + ")∘♭@" + std::to_string(i)};
  }

  Family boxtimes(const Elem& x, const Family& f, const Family& g) const {
    auto self = *this;
    return Family{[self, x, f, g](std::int64_t i) {
                    return self.sum(f.fn(i), self.inner_family(x, f, g, i));
                  },
                  f.desc + " ⊠ " + g.desc};
  }

  Family scale_family(const Elem& y, const Family& f) const {
    auto fn = f.fn;
    return Family{[y, fn](std::int64_t i) { return y * fn(i); },
                  std::to_string(y) + "*(" + f.desc + ")"};
  }

  bool equal_elem(const Elem& a, const Elem& b) const { return a == b; }
  bool equal_point(const Point& a, const Point& b) const { return a == b; }

  Elem gen_elem(Rng& rng) const { return rng.next_int(-window_, window_); }

  Family gen_family(Rng& rng, const Fiber&) const {
    std::int64_t c0 = rng.next_int(-3, 3), c1 = rng.next_int(-3, 3), c2 = rng.next_int(-2, 2);
    return Family{[c0, c1, c2](std::int64_t i) { return c0 + c1 * i + c2 * i * i; },
                  std::to_string(c0) + " + " + std::to_string(c1) + "i + " +
                      std::to_string(c2) + "i^2"};
  }

  // Values stay single-digit; repeated ⊠ keeps nested sums from exploding.
  Family gen_family_small(Rng& rng, const Fiber&) const {
    std::int64_t c0 = rng.next_int(-1, 1), c1 = rng.next_int(-1, 1);
    return Family{[c0, c1](std::int64_t i) { return c0 + c1 * i; },
                  std::to_string(c0) + " + " + std::to_string(c1) + "i"};
  }

  Family2 gen_family2(Rng& rng, const Fiber&, const Fiber&) const {
    std::int64_t a = rng.next_int(-3, 3), b = rng.next_int(-3, 3), c = rng.next_int(-2, 2);
    return Family2{[a, b, c](std::int64_t i, std::int64_t j) { return a + b * i * j + c * j; },
                   std::to_string(a) + " + " + std::to_string(b) + "ij + " +
                       std::to_string(c) + "j"};
  }
  Family2 swap2(const Family2& f2) const {
    auto fn = f2.fn;
    return Family2{[fn](std::int64_t i, std::int64_t j) { return fn(j, i); },
                   "switch(" + f2.desc + ")"};
  }
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    auto self = *this;
    return Family{[self, x, f2](std::int64_t j) {
                    return self.sum(
                        x, Family{[&f2, j](std::int64_t i) { return f2.fn(i, j); }, ""});
                  },
                  "Σ_i(" + f2.desc + ")"};
  }

  std::vector<Point> sample_points(const Fiber&, Rng&) const {
    std::vector<Point> ps;
    for (Point i = -window_; i <= window_; ++i) ps.push_back(i);
    return ps;
  }

  std::string show_elem(const Elem& x) const { return std::to_string(x); }
  std::string show_point(const Point& p) const { return std::to_string(p); }
  std::string show_family(const Family& f) const { return f.desc; }
  std::string show_family2(const Family2& f2) const { return f2.desc; }

private:
  std::int64_t window_;
};

inline std::int64_t int_sum(std::int64_t x, const std::function<std::int64_t(std::int64_t)>& f) {
  return IntAdder{}.sum(x, IntAdder::Family{f, ""});
}

// ---------------------------------------------------------------------------
// F1 = {0,1}: fiber of 0 is empty, fiber of 1 is a point. Everything is
// exhaustively enumerable.
// ---------------------------------------------------------------------------
class F1Adder {
public:
  using Elem = int;
  using Point = int;   // the unique point 1 when present
  using Fiber = int;   // 0 = empty, 1 = singleton
  struct Family {
    std::vector<int> table;  // length 0 or 1
  };
  struct Family2 {
    int nx = 0, ny = 0;
    std::vector<std::vector<int>> grid;
  };

  std::string name() const { return "f1"; }
  bool commutative() const { return true; }
  Elem unit() const { return 1; }
  std::optional<Elem> zero() const { return 0; }
  std::vector<Elem> all_elems() const { return {0, 1}; }

  Fiber fiber_of(const Elem& x) const {
    if (x != 0 && x != 1) throw std::invalid_argument("f1: element not in {0,1}");
    return x;
  }
  Family const_family(const Fiber& n, const Elem& c) const {
    return n == 0 ? Family{} : Family{{c}};
  }
  Elem eval(const Family& f, const Point&) const {
    if (f.table.empty()) throw std::out_of_range("f1: empty family");
    return f.table[0];
  }
  Elem sum(const Elem& x, const Family& f) const {
    if (static_cast<std::size_t>(x) != f.table.size())
      throw std::invalid_argument("f1: malformed family");
    return x == 0 ? 0 : f.table[0];
  }
  Point flatten(const Elem&, const Family&, const Point&, const Point&) const { return 1; }
  Family inner_family(const Elem& x, const Family& f, const Family& g, const Point& i) const {
    Elem fi = eval(f, i);
    if (fi == 0) return Family{};
    return Family{{eval(g, flatten(x, f, i, 1))}};
  }
  Family boxtimes(const Elem& x, const Family& f, const Family& g) const {
    if (x == 0) return Family{};
    Elem fi = f.table[0];
    return Family{{sum(fi, inner_family(x, f, g, 1))}};
  }
  Family scale_family(const Elem& y, const Family& f) const {
    Family r = f;
    for (auto& v : r.table) v = y * v;
    return r;
  }

  bool equal_elem(const Elem& a, const Elem& b) const { return a == b; }
  bool equal_point(const Point& a, const Point& b) const { return a == b; }

  Elem gen_elem(Rng& rng) const { return static_cast<int>(rng.next_below(2)); }
  Family gen_family(Rng& rng, const Fiber& n) const {
    return n == 0 ? Family{} : Family{{static_cast<int>(rng.next_below(2))}};
  }
  Family2 gen_family2(Rng& rng, const Fiber& nx, const Fiber& ny) const {
    Family2 f2;
    f2.nx = nx;
    f2.ny = ny;
    f2.grid.assign(nx, std::vector<int>(ny));
    for (auto& row : f2.grid)
      for (auto& v : row) v = static_cast<int>(rng.next_below(2));
    return f2;
  }
  Family2 swap2(const Family2& f2) const {
    Family2 r;
    r.nx = f2.ny;
    r.ny = f2.nx;
    r.grid.assign(static_cast<std::size_t>(f2.ny), std::vector<int>(f2.nx));
    for (std::size_t i = 0; i < f2.grid.size(); ++i)
      for (std::size_t j = 0; j < f2.grid[i].size(); ++j) r.grid[j][i] = f2.grid[i][j];
    return r;
  }
  Family partial_sum_family(const Elem& x, const Family2& f2) const {
    Family r;
    for (int j = 0; j < f2.ny; ++j) r.table.push_back(x == 0 ? 0 : f2.grid[0][j]);
    return r;
  }

  std::vector<Point> sample_points(const Fiber& n, Rng&) const {
    return n == 0 ? std::vector<Point>{} : std::vector<Point>{1};
  }

  std::string show_elem(const Elem& x) const { return std::to_string(x); }
  std::string show_point(const Point& p) const { return std::to_string(p); }
  std::string show_family(const Family& f) const {
    return f.table.empty() ? "<>" : "<" + std::to_string(f.table[0]) + ">";
  }
  std::string show_family2(const Family2& f2) const {
    std::string s = "[";
    for (const auto& row : f2.grid)
      for (int v : row) s += std::to_string(v);
    return s + "]";
  }
};

inline int f1_sum(int x, const std::vector<int>& table) {
  return F1Adder{}.sum(x, F1Adder::Family{table});
}

// ---------------------------------------------------------------------------
// Degenerate adder on a monoid: fibers are singletons and Sum^x <y> = y·x.
// Default carrier is the free monoid on {a,b,c}.
// ---------------------------------------------------------------------------
class MonoidAdder {
public:
  using Elem = std::string;  // word; empty string is the identity
  struct Point {};           // the unique fiber point
  struct Fiber {};
  struct Family {
    Elem value;
  };
  struct FubiniWitness {
    std::string description;
    Elem lhs, rhs;
  };

  explicit MonoidAdder(int max_word_len = 4) : max_len_(max_word_len) {}

  std::string name() const { return "monoid"; }
  bool commutative() const { return false; }
  Elem unit() const { return ""; }
  std::optional<Elem> zero() const { return std::nullopt; }

  Fiber fiber_of(const Elem&) const { return {}; }
  Family const_family(const Fiber&, const Elem& c) const { return Family{c}; }
  Elem eval(const Family& f, const Point&) const { return f.value; }
  // multiplication acts on the left: the family value times the extent
  Elem sum(const Elem& x, const Family& f) const { return f.value + x; }
  Point flatten(const Elem&, const Family&, const Point&, const Point&) const { return {}; }
  Family inner_family(const Elem&, const Family&, const Family& g, const Point&) const {
    return g;
  }
  Family boxtimes(const Elem&, const Family& f, const Family& g) const {
    return Family{g.value + f.value};
  }
  Family scale_family(const Elem& y, const Family& f) const { return Family{y + f.value}; }

  bool equal_elem(const Elem& a, const Elem& b) const { return a == b; }
  bool equal_point(const Point&, const Point&) const { return true; }

  Elem gen_elem(Rng& rng) const {
    int len = static_cast<int>(rng.next_below(max_len_ + 1));
    Elem w;
    for (int i = 0; i < len; ++i) w += static_cast<char>('a' + rng.next_below(3));
    return w;
  }
  Family gen_family(Rng& rng, const Fiber&) const { return Family{gen_elem(rng)}; }

  FubiniWitness fubini_counterexample() const {
    // Sum^y Sum^x const_w = (w·x)·y against (w·y)·x with w empty, x=a, y=b.
    return FubiniWitness{"x=\"a\" y=\"b\" f=const \"\"", "ab", "ba"};
  }

  std::vector<Point> sample_points(const Fiber&, Rng&) const { return {Point{}}; }

  std::string show_elem(const Elem& x) const { return x.empty() ? "ε" : x; }
  std::string show_point(const Point&) const { return "*"; }
  std::string show_family(const Family& f) const { return "<" + show_elem(f.value) + ">"; }

private:
  int max_len_;
};

inline std::string monoid_adder_sum(const std::string& x, const std::string& y) {
  return MonoidAdder{}.sum(x, MonoidAdder::Family{y});
}

}  // namespace depsum
