#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsopt/qubo.hpp"

namespace tsopt {

/// Optimization direction of one objective dimension.
enum class Sense { Minimize, Maximize };

/// Where a solution came from: which algorithm, which run.
struct Provenance {
  std::string algorithm;
  int run = 0;
};

/// A selection with its evaluated objective vector.  `objectives` is
/// ordered (cost, coverage, faults) in three-objective mode and
/// (cost, failure rate) in two-objective mode.  `provenance` can hold
/// several entries after duplicate objective vectors are collapsed in a
/// reference frontier.
struct SelectionSolution {
  std::vector<std::uint8_t> assignment;
  std::vector<double> objectives;
  std::vector<Provenance> provenance;
};

/// A set of solutions sharing objective senses.  Outputs of the filter
/// operations are mutually non-dominated; archives assembled by hand
/// (e.g. every greedy prefix) need not be.
struct ParetoArchive {
  std::vector<Sense> senses;
  std::vector<SelectionSolution> members;
};

inline std::vector<Sense> senses3() {
  return {Sense::Minimize, Sense::Maximize, Sense::Maximize};
}
inline std::vector<Sense> senses2() {
  return {Sense::Minimize, Sense::Maximize};
}

inline std::vector<double> objectives_of(const ObjectiveVector3& o) {
  return {o.total_cost, static_cast<double>(o.statement_coverage),
          static_cast<double>(o.fault_coverage)};
}
inline std::vector<double> objectives_of(const ObjectiveVector2& o) {
  return {o.total_cost, o.total_failure_rate};
}

/// True iff `a` is at least as good as `b` in every dimension and
/// strictly better in at least one.  Throws ValidationError on a
/// dimension mismatch.
bool dominates(const std::vector<double>& a, const std::vector<double>& b,
               const std::vector<Sense>& senses);

/// Objective-vector equality with a 1e-9 absolute tolerance per
/// dimension (integral dimensions are exact at this tolerance).
bool objectives_equal(const std::vector<double>& a, const std::vector<double>& b);

/// Keeps the members no other member dominates.  Duplicate objective
/// vectors collapse to one representative that accumulates all
/// provenances.  Member order follows first appearance.
ParetoArchive non_dominated_filter(const ParetoArchive& archive);

/// The reference frontier: non-dominated filter of the union of all
/// archives.  All archives must share dimensionality and senses.
ParetoArchive reference_frontier(const std::vector<ParetoArchive>& frontiers);

/// Number of `run_frontier` members that are not strictly dominated by
/// any reference member with a different objective vector.  Matching is
/// by objective vector, never by assignment.
int count_nondominated(const ParetoArchive& run_frontier, const ParetoArchive& reference);

/// Frontier file: one line per (member, provenance) —
///   `<algorithm> <run> <cost> <coverage> <faults>`  (three objectives)
///   `<algorithm> <run> <cost> <failure_rate>`       (two objectives)
void save_frontier_file(const ParetoArchive& archive, const std::string& path);

/// Loads a frontier file; every line must have the dimensionality
/// implied by `senses`.  Assignments are not part of the format and come
/// back empty.
ParetoArchive load_frontier_file(const std::string& path, const std::vector<Sense>& senses);

}  // namespace tsopt
