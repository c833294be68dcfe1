#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depsum/check.hpp"
#include "json.hpp"

namespace depsum {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::vector<std::string> instances;
  std::vector<std::string> axioms;  // empty means all applicable
  std::uint64_t cases = 200;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  std::string format = "text";
  std::string out_path;
};

struct SuiteOutcome {
  std::string instance;
  std::string axiom;
  CheckResult result;
  double millis = 0.0;
};

struct Report {
  RunConfig config;
  std::vector<SuiteOutcome> outcomes;

  bool passed() const {
    for (const auto& o : outcomes)
      if (!o.result.passed()) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["version"] = kVersion;
    j["config"] = {{"instances", config.instances}, {"axioms", config.axioms},
                   {"cases", config.cases},         {"seed", config.seed},
                   {"tol", config.tol}};
    j["results"] = nlohmann::json::array();
    for (const auto& o : outcomes) {
      nlohmann::json r;
      r["instance"] = o.instance;
      r["axiom"] = o.axiom;
      r["cases_run"] = o.result.cases_run;
      r["cases_skipped"] = o.result.cases_skipped;
      r["passed"] = o.result.passed();
      if (!o.result.note.empty()) r["note"] = o.result.note;
      r["failures"] = nlohmann::json::array();
      for (const auto& f : o.result.failures)
        r["failures"].push_back({{"case", f.case_index},
                                 {"inputs", f.inputs},
                                 {"lhs", f.lhs},
                                 {"rhs", f.rhs}});
      r["millis"] = o.millis;
      j["results"].push_back(r);
    }
    j["passed"] = passed();
    return j;
  }

  std::string to_text() const {
    std::string s;
    for (const auto& o : outcomes)
      s += o.instance + " / " + o.result.summary() + "\n";
    s += passed() ? "overall: PASS\n" : "overall: FAIL\n";
    return s;
  }
};

}  // namespace depsum
