#pragma once

#include <cstdint>
#include <vector>

#include "tsopt/pareto.hpp"
#include "tsopt/test_suite.hpp"

namespace tsopt {

/// Runs the additional-greedy heuristic and returns every cumulative
/// prefix as a candidate solution, in pick order.  Each iteration picks
/// the unselected test maximizing
///   (newly covered statements / |K| + e_i) / max(cost_i, 1e-9),
/// ties broken by lower cost, then lower index, and stops once no
/// remaining test covers anything new or carries a fault flag.
/// Candidate count is therefore at most |suite|.
std::vector<SelectionSolution> greedy_candidates(const TestSuite& suite,
                                                 const NormalizedCosts& costs);

/// The additional-greedy baseline: greedy_candidates filtered to its
/// non-dominated subset (three-objective senses).  Throws
/// ValidationError on an empty suite.
std::vector<SelectionSolution> additional_greedy(const TestSuite& suite,
                                                 const NormalizedCosts& costs);

/// Turns one solver assignment into an archive of sub-suites: orders the
/// selected tests by the same greedy score restricted to the selection,
/// emits every prefix, and keeps the non-dominated ones.
std::vector<SelectionSolution> extract_archive(const TestSuite& suite,
                                               const NormalizedCosts& costs,
                                               const std::vector<std::uint8_t>& best_assignment);

}  // namespace tsopt
