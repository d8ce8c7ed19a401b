#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace limitops {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Acceptance criteria 1..8, runnable individually. Fixed seeds; every
// tolerance is pinned in the implementation.
CriterionResult run_criterion(int id, std::uint64_t seedSalt = 0);
std::vector<CriterionResult> run_all_criteria(std::uint64_t seedSalt = 0);

// Named suites exposed by the CLI: prop6, example13, example14, example16,
// essspec-demo, localize-demo, invariants, all.
std::vector<CriterionResult> run_suite(const std::string& name, std::uint64_t seedSalt = 0);
std::vector<std::string> suite_names();

}  // namespace limitops
