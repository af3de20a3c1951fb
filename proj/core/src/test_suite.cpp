#include "tsopt/test_suite.hpp"

#include <algorithm>
#include <string>

#include "tsopt/errors.hpp"

namespace tsopt {

TestSuite TestSuite::build(std::vector<TestCase> cases) {
  TestSuite suite;
  suite.cases = std::move(cases);
  for (std::size_t i = 0; i < suite.cases.size(); ++i) {
    TestCase& tc = suite.cases[i];
    tc.id = static_cast<int>(i);
    if (tc.raw_cost < 0.0)
      throw ValidationError("case " + std::to_string(i) + ": raw_cost must be >= 0");
    if (tc.fault_flag != 0 && tc.fault_flag != 1)
      throw ValidationError("case " + std::to_string(i) + ": fault_flag must be 0 or 1");
    if (tc.failure_rate < 0.0 || tc.failure_rate > 1.0)
      throw ValidationError("case " + std::to_string(i) + ": failure_rate must be in [0, 1]");
    std::sort(tc.covered_statements.begin(), tc.covered_statements.end());
    tc.covered_statements.erase(
        std::unique(tc.covered_statements.begin(), tc.covered_statements.end()),
        tc.covered_statements.end());
    for (int k : tc.covered_statements) suite.coverage_index[k].push_back(tc.id);
  }
  suite.statement_universe.reserve(suite.coverage_index.size());
  for (const auto& [k, covering] : suite.coverage_index) suite.statement_universe.push_back(k);
  return suite;
}

NormalizedCosts normalize_costs(const TestSuite& suite) {
  if (suite.cases.empty()) throw ValidationError("cannot normalize costs of an empty suite");
  double max_cost = 0.0;
  for (const TestCase& tc : suite.cases) max_cost = std::max(max_cost, tc.raw_cost);
  NormalizedCosts costs;
  costs.values.reserve(suite.cases.size());
  for (const TestCase& tc : suite.cases)
    costs.values.push_back(max_cost > 0.0 ? tc.raw_cost / max_cost : 0.0);
  return costs;
}

}  // namespace tsopt
