#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "depsum/adder.hpp"
#include "depsum/derived.hpp"
#include "depsum/ordinal.hpp"

using namespace depsum;

namespace {

CnfOrdinal ord(const char* s) { return cnf_parse(s); }

// Oracle: the transfinite recursion unrolled over a finite domain,
// Sum^{n+1} f = Sum^n f + f(n), summing strictly left to right.
CnfOrdinal finite_recursion_oracle(const std::vector<CnfOrdinal>& values) {
  CnfOrdinal acc;
  for (const auto& v : values) acc = cnf_add(acc, v);
  return acc;
}

StepFamily family_from_table(const std::vector<CnfOrdinal>& values) {
  StepFamily f;
  f.domain = CnfOrdinal::finite(static_cast<std::int64_t>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    f.pieces.push_back({CnfOrdinal::finite(static_cast<std::int64_t>(i + 1)), values[i]});
  return f;
}

}  // namespace

TEST_CASE("cnf arithmetic") {
  CHECK(cnf_to_string(cnf_add(ord("w"), ord("1"))) == "w + 1");
  CHECK(cnf_add(ord("1"), ord("w")) == ord("w"));  // left absorption
  CHECK(cnf_add(ord("w*2"), ord("w^2")) == ord("w^2"));
  CHECK(cnf_left_sub(ord("w"), ord("w*2")) == ord("w"));
  CHECK(cnf_mul(ord("2"), ord("w")) == ord("w"));
  CHECK(cnf_mul(ord("w"), ord("2")) == ord("w*2"));
  CHECK(cnf_mul(ord("w + 1"), ord("w")) == ord("w^2"));
  CHECK(cnf_mul(ord("w"), ord("w + 1")) == ord("w^2 + w"));
  CHECK(cnf_cmp(ord("w^(w + 1)"), ord("w^w*5 + w")) > 0);
  CHECK_THROWS(cnf_left_sub(ord("w*2"), ord("w")));
}

TEST_CASE("cnf left division") {
  Rng rng(3);
  OrdAdder a;
  for (int trial = 0; trial < 500; ++trial) {
    CnfOrdinal t = a.gen_elem(rng);
    CnfOrdinal c = a.gen_elem(rng);
    if (c.is_zero()) continue;
    auto [q, r] = cnf_divmod_left(t, c);
    CHECK(cnf_add(cnf_mul(c, q), r) == t);
    CHECK(cnf_cmp(r, c) < 0);
  }
}

TEST_CASE("ordinal text syntax round trips") {
  for (const char* s : {"0", "1", "5", "w", "w*2", "w + 1", "w^2*3 + w + 5", "w^(w + 1)*2 + w^2",
                        "w^w + w^3*4 + 2"}) {
    CHECK(cnf_to_string(cnf_parse(s)) == s);
  }
  Rng rng(17);
  OrdAdder a;
  for (int i = 0; i < 300; ++i) {
    CnfOrdinal x = cnf_add(a.gen_elem(rng), a.gen_elem(rng));
    CHECK(cnf_parse(cnf_to_string(x)) == x);
  }
  CHECK_THROWS(cnf_parse("w^"));
  CHECK_THROWS(cnf_parse("3 + "));
}

TEST_CASE("ord_sum constant families") {
  CHECK(ord_sum(ord("w"), step_const(ord("w"), ord("1"))) == ord("w"));
  CHECK(ord_sum(ord("2"), step_const(ord("2"), ord("w"))) == ord("w*2"));
  CHECK(ord_sum(ord("w"), step_const(ord("w"), ord("2"))) == ord("w"));  // 2·w = w
  CHECK(ord_sum(ord("0"), StepFamily{}) == ord("0"));
  CHECK(ord_sum(ord("w"), step_const(ord("w"), ord("0"))) == ord("0"));
}

TEST_CASE("ord_sum agrees with the finite recursion oracle") {
  Rng rng(23);
  OrdAdder a;
  for (int trial = 0; trial < 400; ++trial) {
    int n = static_cast<int>(rng.next_below(13));
    std::vector<CnfOrdinal> values;
    for (int i = 0; i < n; ++i) values.push_back(a.gen_elem(rng));
    CHECK(ord_sum(CnfOrdinal::finite(n), family_from_table(values)) ==
          finite_recursion_oracle(values));
  }
  // random finite-valued families up to the stated bounds
  for (int trial = 0; trial < 400; ++trial) {
    int n = static_cast<int>(rng.next_below(13));
    std::vector<CnfOrdinal> values;
    for (int i = 0; i < n; ++i) values.push_back(CnfOrdinal::finite(rng.next_int(0, 12)));
    CHECK(ord_sum(CnfOrdinal::finite(n), family_from_table(values)) ==
          finite_recursion_oracle(values));
  }
  // exhaustive: all finite-valued tables over alpha <= 4 with values <= 4
  for (int n = 0; n <= 4; ++n) {
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<CnfOrdinal> values;
      for (int v : idx) values.push_back(CnfOrdinal::finite(v));
      CHECK(ord_sum(CnfOrdinal::finite(n), family_from_table(values)) ==
            finite_recursion_oracle(values));
      int pos = 0;
      while (pos < n && idx[static_cast<std::size_t>(pos)] == 4) idx[static_cast<std::size_t>(pos++)] = 0;
      if (pos == n) break;
      ++idx[static_cast<std::size_t>(pos)];
    }
  }
}

TEST_CASE("flatten positions") {
  // f const w on alpha=2: (i=1, j=3) → w+3
  StepFamily f = step_const(ord("2"), ord("w"));
  CHECK(ord_flatten_eval(ord("2"), f, ord("1"), ord("3")) == ord("w + 3"));
  CHECK(ord_flatten_eval(ord("2"), f, ord("0"), ord("0")) == ord("0"));
  StepFamily ones = step_const(ord("w"), ord("1"));
  CHECK(ord_flatten_eval(ord("w"), ones, ord("5"), ord("0")) == ord("5"));
  CHECK_THROWS(ord_flatten_eval(ord("2"), f, ord("2"), ord("0")));
  CHECK_THROWS(ord_flatten_eval(ord("2"), f, ord("1"), ord("w")));
}

TEST_CASE("flatten is strictly monotone in lex (i,j) and lands below the sum") {
  OrdAdder a;
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    CnfOrdinal alpha = a.gen_elem(rng);
    if (alpha.is_zero()) continue;
    StepFamily f = a.gen_family(rng, alpha);
    CnfOrdinal total = ord_sum(alpha, f);
    std::vector<std::pair<CnfOrdinal, CnfOrdinal>> pts;
    for (const auto& i : a.sample_points(alpha, rng)) {
      CnfOrdinal fi = step_eval(f, i);
      if (fi.is_zero()) continue;
      for (const auto& j : a.sample_points(fi, rng)) pts.push_back({i, j});
    }
    std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) {
      int c = cnf_cmp(p.first, q.first);
      return c != 0 ? c < 0 : cnf_cmp(p.second, q.second) < 0;
    });
    CnfOrdinal prev;
    bool first = true;
    for (const auto& [i, j] : pts) {
      CnfOrdinal pos = ord_flatten_eval(alpha, f, i, j);
      CHECK(cnf_cmp(pos, total) < 0);
      if (!first) CHECK(cnf_cmp(prev, pos) < 0);
      prev = pos;
      first = false;
    }
  }
}

TEST_CASE("boxtimes matches pointwise window sums") {
  OrdAdder a;
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    CnfOrdinal alpha = a.gen_elem(rng);
    StepFamily f = a.gen_family(rng, alpha);
    StepFamily g = a.gen_family(rng, ord_sum(alpha, f));
    StepFamily fg = step_boxtimes(alpha, f, g);
    for (const auto& i : a.sample_points(alpha, rng)) {
      CnfOrdinal direct =
          ord_sum(step_eval(f, i), step_window(g, step_partial_sum(f, i), step_eval(f, i)));
      CHECK(step_eval(fg, i) == direct);
    }
  }
}

TEST_CASE("core axiom suite: ord") {
  OrdAdder a;
  CHECK(check_right_unit(a, 300, 51).passed());
  CHECK(check_left_unit(a, 300, 52).passed());
  CHECK(check_sum_assoc(a, 300, 53).passed());
  CHECK(check_flatten_assoc(a, 300, 64, 54).passed());
  auto fub = check_fubini(a, 300, 55);
  CHECK(fub.passed());
  CHECK(fub.note.find("counterexample") != std::string::npos);
  CHECK(check_zero(a, 300, 56).passed());
  CHECK(check_naturality(a, {0, 1, 1}, 60, 57).passed());
  CHECK(check_monoid_laws(a, 200, 58).passed());
  CHECK(check_right_distributivity(a, 200, 59).passed());
}

TEST_CASE("non-commutativity witness: 2·w = w but w·2 ≠ w") {
  OrdAdder a;
  CnfOrdinal two = CnfOrdinal::finite(2);
  CnfOrdinal w = CnfOrdinal::omega();
  CHECK(product(a, two, w) == w);
  CHECK(product(a, w, two) == ord("w*2"));
  CHECK(!(product(a, two, w) == product(a, w, two)));
  auto witness = a.fubini_counterexample();
  CHECK(witness.lhs == ord("w"));
  CHECK(witness.rhs == ord("w*2"));
}

TEST_CASE("fib category laws hold for ord") {
  CHECK(check_fib_category(OrdAdder{}, 150, 61).passed());
}
