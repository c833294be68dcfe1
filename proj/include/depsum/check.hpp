#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace depsum {

// Thrown by an instance when a generated case cannot be carried out (size
// caps, generator dead ends); the harness counts it as skipped, not failed.
struct SkipCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Outcome of one axiom suite. A failure stores both sides fully serialized so
// the case can be reproduced from (seed, case index).
struct CheckFailure {
  std::uint64_t case_index = 0;
  std::string inputs;
  std::string lhs;
  std::string rhs;
};

struct CheckResult {
  std::string axiom;
  std::uint64_t cases_run = 0;
  std::uint64_t cases_skipped = 0;  // generator exhaustion / size-cap skips
  std::vector<CheckFailure> failures;
  std::string note;

  bool passed() const { return failures.empty(); }

  void record(std::uint64_t idx, std::string inputs, std::string lhs, std::string rhs) {
    failures.push_back({idx, std::move(inputs), std::move(lhs), std::move(rhs)});
  }

  std::string summary() const {
    std::string s = axiom + ": " + (passed() ? "pass" : "FAIL") + " (" +
                    std::to_string(cases_run) + " cases";
    if (cases_skipped) s += ", " + std::to_string(cases_skipped) + " skipped";
    s += ")";
    if (!failures.empty()) {
      s += " first failure [case " + std::to_string(failures.front().case_index) +
           "] inputs=" + failures.front().inputs + " lhs=" + failures.front().lhs +
           " rhs=" + failures.front().rhs;
    }
    if (!note.empty()) s += " — " + note;
    return s;
  }
};

}  // namespace depsum
