#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "depsum/runner.hpp"

using namespace depsum;

TEST_CASE("report JSON carries the schema, config echo and per-suite results") {
  RunConfig config;
  config.instances = {"nat", "f1"};
  config.axioms = {"right-unit", "zero"};
  config.cases = 50;
  config.seed = 99;
  Report rep = run_report(config);
  nlohmann::json j = rep.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["seed"] == 99);
  CHECK(j["results"].size() == 4);
  CHECK(j["passed"] == true);
  for (const auto& r : j["results"]) {
    CHECK(r.contains("millis"));
    CHECK(r["passed"] == true);
  }
}

TEST_CASE("same config and seed reproduce the report modulo timing") {
  RunConfig config;
  config.instances = {"ord", "padic2"};
  config.cases = 60;
  config.seed = 5;
  auto strip = [](const Report& r) {
    nlohmann::json j = r.to_json();
    for (auto& x : j["results"]) x.erase("millis");
    return j;
  };
  CHECK(strip(run_report(config)) == strip(run_report(config)));
}

TEST_CASE("unknown instances and inapplicable axioms are rejected") {
  RunConfig config;
  config.instances = {"nosuch"};
  CHECK_THROWS_AS(run_report(config), std::invalid_argument);
  config.instances = {"set"};
  config.axioms = {"fubini"};
  CHECK_THROWS_AS(run_report(config), std::invalid_argument);
}

TEST_CASE("overall pass flag is the conjunction of the suites") {
  Report rep;
  SuiteOutcome good{"nat", "zero", CheckResult{}, 0.0};
  rep.outcomes.push_back(good);
  CHECK(rep.passed());
  SuiteOutcome bad = good;
  bad.result.record(0, "x", "1", "2");
  rep.outcomes.push_back(bad);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("failure serialization reproduces the case when re-run") {
  // a deliberately wrong tolerance makes the real adder fail; the recorded
  // case index together with the seed re-derives the same inputs
  RealAdder strict(RealCarrier::NonNegative, 1e-18);
  auto r = check_right_unit(strict, 50, 4242);
  REQUIRE_FALSE(r.passed());
  auto first = r.failures.front();
  Rng rng = Rng::derive(4242, first.case_index);
  auto x = strict.gen_elem(rng);
  CHECK(first.inputs == "x=" + strict.show_elem(x));
}
