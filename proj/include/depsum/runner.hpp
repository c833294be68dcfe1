#pragma once

#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "depsum/adder.hpp"
#include "depsum/cat_adder.hpp"
#include "depsum/continuous.hpp"
#include "depsum/discrete.hpp"
#include "depsum/ordinal.hpp"
#include "depsum/padic.hpp"
#include "depsum/polyadder.hpp"
#include "depsum/report.hpp"
#include "depsum/settop.hpp"

namespace depsum {

inline const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> names = {
      "nat",  "int",  "f1",        "monoid", "ord",  "padic2", "padic3", "padic5",
      "faulhaber", "rplus", "unit", "real",   "sym",  "complex", "cat",   "set"};
  return names;
}

inline const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = {"right-unit",    "left-unit", "sum-assoc",
                                                 "flatten-assoc", "fubini",    "zero",
                                                 "naturality"};
  return names;
}

struct InstanceInfo {
  std::string name;
  bool commutative = true;
  bool has_zero = true;
  std::vector<std::string> axioms;
};

inline std::vector<InstanceInfo> instance_catalog_info() {
  std::vector<InstanceInfo> out;
  for (const auto& n : instance_names()) {
    InstanceInfo info;
    info.name = n;
    if (n == "set") {
      info.axioms = {"left-module", "eps-monotone"};
      out.push_back(info);
      continue;
    }
    info.axioms = axiom_names();
    if (n == "ord" || n == "monoid") info.commutative = false;
    if (n == "monoid") info.has_zero = false;
    out.push_back(info);
  }
  return out;
}

namespace detail {

template <class A>
CheckResult run_axiom_on(const A& a, const std::string& axiom, std::uint64_t cases,
                         std::uint64_t seed) {
  if (axiom == "right-unit") return check_right_unit(a, cases, seed + 1);
  if (axiom == "left-unit") return check_left_unit(a, cases, seed + 2);
  if (axiom == "sum-assoc") return check_sum_assoc(a, cases, seed + 3);
  if (axiom == "flatten-assoc") return check_flatten_assoc(a, cases, 24, seed + 4);
  if (axiom == "fubini") return check_fubini(a, cases, seed + 5);
  if (axiom == "zero") return check_zero(a, cases, seed + 6);
  if (axiom == "naturality")
    return check_naturality(a, {0, 1, 0}, std::max<std::uint64_t>(cases / 5, 1), seed + 7);
  throw std::invalid_argument("unknown axiom: " + axiom);
}

}  // namespace detail

// Run one (instance, axiom) suite; analytic instances honor the tolerance.
inline CheckResult run_suite(const std::string& instance, const std::string& axiom,
                             std::uint64_t cases, std::uint64_t seed, double tol) {
  using detail::run_axiom_on;
  if (instance == "nat") return run_axiom_on(NatAdder{}, axiom, cases, seed);
  if (instance == "int") return run_axiom_on(IntAdder{}, axiom, cases, seed);
  if (instance == "f1") return run_axiom_on(F1Adder{}, axiom, cases, seed);
  if (instance == "monoid") return run_axiom_on(MonoidAdder{}, axiom, cases, seed);
  if (instance == "ord") return run_axiom_on(OrdAdder{}, axiom, cases, seed);
  if (instance == "padic2") return run_axiom_on(PadicAdder(2, 24), axiom, cases, seed);
  if (instance == "padic3") return run_axiom_on(PadicAdder(3, 24), axiom, cases, seed);
  if (instance == "padic5") return run_axiom_on(PadicAdder(5, 24), axiom, cases, seed);
  if (instance == "faulhaber") return run_axiom_on(FaulhaberAdder{}, axiom, cases, seed);
  if (instance == "rplus") return run_axiom_on(make_rplus_adder(tol), axiom, cases, seed);
  if (instance == "unit") return run_axiom_on(make_unit_adder(tol), axiom, cases, seed);
  if (instance == "real") return run_axiom_on(make_real_adder(tol), axiom, cases, seed);
  if (instance == "sym") return run_axiom_on(make_sym_adder(tol), axiom, cases, seed);
  if (instance == "complex") return run_axiom_on(ComplexAdder(tol), axiom, cases, seed);
  if (instance == "cat") return run_axiom_on(CatAdder{}, axiom, cases, seed);
  if (instance == "set") {
    if (axiom == "left-module") return left_set_module_suite(cases, seed + 11);
    if (axiom == "eps-monotone") return check_eps_monotone(cases, seed + 12);
    throw std::invalid_argument("axiom " + axiom + " does not apply to the set instance");
  }
  throw std::invalid_argument("unknown instance: " + instance);
}

inline Report run_report(const RunConfig& config) {
  Report report;
  report.config = config;
  auto info = instance_catalog_info();
  for (const auto& inst : config.instances) {
    const InstanceInfo* meta = nullptr;
    for (const auto& i : info)
      if (i.name == inst) meta = &i;
    if (!meta) throw std::invalid_argument("unknown instance: " + inst);
    std::vector<std::string> axioms = config.axioms;
    if (axioms.empty() || (axioms.size() == 1 && axioms[0] == "all")) axioms = meta->axioms;
    for (const auto& ax : axioms) {
      bool applicable = false;
      for (const auto& known : meta->axioms) applicable = applicable || known == ax;
      if (!applicable)
        throw std::invalid_argument("axiom " + ax + " does not apply to instance " + inst);
      auto start = std::chrono::steady_clock::now();
      CheckResult r = run_suite(inst, ax, config.cases, config.seed, config.tol);
      auto stop = std::chrono::steady_clock::now();
      double ms = std::chrono::duration<double, std::milli>(stop - start).count();
      report.outcomes.push_back({inst, ax, std::move(r), ms});
    }
  }
  return report;
}

}  // namespace depsum
