#pragma once

#include <cstdint>
#include <vector>

#include "tsopt/pareto.hpp"
#include "tsopt/sa.hpp"
#include "tsopt/test_suite.hpp"

namespace tsopt {

/// Bootstrap decomposition parameters: m sub-suites of size n, and the
/// target fraction beta of distinct test cases the sampling should
/// reach.  Sampling cannot guarantee beta; the run reports whether it
/// was met instead of resampling.
struct BootstrapConfig {
  int n = 1;
  int m = 1;
  double beta_coverage = 1.0;
  std::uint64_t seed = 0;
};

struct BootstrapResult {
  SelectionSolution solution;        ///< merged (union) selection
  double achieved_coverage = 0.0;    ///< distinct sampled cases / |suite|
  bool coverage_met = false;         ///< achieved_coverage >= beta
  std::vector<std::vector<int>> subsets;         ///< sampled case ids, sorted
  std::vector<std::vector<int>> sub_selections;  ///< selected case ids per subset
};

/// Two-objective bootstrap solve: draws m subsets of size n (uniform
/// without replacement inside a subset, independent across subsets, so a
/// case may appear in several), solves a two-objective model per subset
/// with simulated annealing, and merges per-subset selections by union.
/// Costs are sliced from the whole-suite normalization so sub-problems
/// stay commensurate.  Throws ValidationError when n or m is out of
/// range for the suite.
BootstrapResult bootstrap_solve(const TestSuite& suite, const NormalizedCosts& costs,
                                double alpha, const BootstrapConfig& bconfig,
                                const AnnealConfig& aconfig);

}  // namespace tsopt
