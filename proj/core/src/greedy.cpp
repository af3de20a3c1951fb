#include "tsopt/greedy.hpp"

#include <algorithm>
#include <map>

#include "tsopt/errors.hpp"

namespace tsopt {

namespace {

constexpr double kCostFloor = 1e-9;

/// Incremental greedy state over a fixed candidate pool.
struct GreedyState {
  const TestSuite& suite;
  const NormalizedCosts& costs;
  std::map<int, int> statement_position;
  std::vector<std::uint8_t> covered;   // by statement position
  std::vector<std::uint8_t> selected;  // by case id
  std::vector<std::uint8_t> assignment;

  GreedyState(const TestSuite& s, const NormalizedCosts& c)
      : suite(s),
        costs(c),
        covered(s.statement_universe.size(), 0),
        selected(s.cases.size(), 0),
        assignment(s.cases.size(), 0) {
    for (std::size_t pos = 0; pos < s.statement_universe.size(); ++pos)
      statement_position[s.statement_universe[pos]] = static_cast<int>(pos);
  }

  int newly_covered(int i) const {
    int added = 0;
    for (int k : suite.cases[i].covered_statements)
      if (!covered[statement_position.at(k)]) ++added;
    return added;
  }

  double score(int i, int added) const {
    const double coverage_gain =
        suite.statement_universe.empty()
            ? 0.0
            : static_cast<double>(added) / static_cast<double>(suite.statement_universe.size());
    return (coverage_gain + suite.cases[i].fault_flag) /
           std::max(costs.values[i], kCostFloor);
  }

  void pick(int i) {
    selected[i] = 1;
    assignment[i] = 1;
    for (int k : suite.cases[i].covered_statements) covered[statement_position.at(k)] = 1;
  }

  /// Best unselected candidate in `pool`; ties go to lower cost, then
  /// lower index.  Returns -1 when the pool is exhausted.
  int best_candidate(const std::vector<int>& pool, bool require_value) const {
    int best = -1;
    double best_score = 0.0;
    for (int i : pool) {
      if (selected[i]) continue;
      const int added = newly_covered(i);
      if (require_value && added == 0 && suite.cases[i].fault_flag == 0) continue;
      const double s = score(i, added);
      const bool wins =
          best == -1 || s > best_score ||
          (s == best_score && (costs.values[i] < costs.values[best] ||
                               (costs.values[i] == costs.values[best] && i < best)));
      if (wins) {
        best = i;
        best_score = s;
      }
    }
    return best;
  }
};

std::vector<SelectionSolution> run_greedy(const TestSuite& suite, const NormalizedCosts& costs,
                                          const std::vector<int>& pool, bool require_value) {
  GreedyState state(suite, costs);
  std::vector<SelectionSolution> prefixes;
  while (true) {
    const int next = state.best_candidate(pool, require_value);
    if (next < 0) break;
    state.pick(next);
    SelectionSolution s;
    s.assignment = state.assignment;
    s.objectives = objectives_of(evaluate_objectives3(suite, costs, state.assignment));
    prefixes.push_back(std::move(s));
  }
  return prefixes;
}

std::vector<SelectionSolution> filter3(std::vector<SelectionSolution> candidates) {
  ParetoArchive archive;
  archive.senses = senses3();
  archive.members = std::move(candidates);
  return non_dominated_filter(archive).members;
}

}  // namespace

std::vector<SelectionSolution> greedy_candidates(const TestSuite& suite,
                                                 const NormalizedCosts& costs) {
  if (suite.cases.empty()) throw ValidationError("greedy selection needs a nonempty suite");
  if (costs.values.size() != suite.cases.size())
    throw ValidationError("normalized costs do not match the suite size");
  std::vector<int> pool(suite.cases.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
  return run_greedy(suite, costs, pool, /*require_value=*/true);
}

std::vector<SelectionSolution> additional_greedy(const TestSuite& suite,
                                                 const NormalizedCosts& costs) {
  return filter3(greedy_candidates(suite, costs));
}

std::vector<SelectionSolution> extract_archive(const TestSuite& suite,
                                               const NormalizedCosts& costs,
                                               const std::vector<std::uint8_t>& best_assignment) {
  if (best_assignment.size() != suite.cases.size())
    throw ValidationError("assignment length does not match the suite size");
  if (costs.values.size() != suite.cases.size())
    throw ValidationError("normalized costs do not match the suite size");
  std::vector<int> pool;
  for (std::size_t i = 0; i < best_assignment.size(); ++i)
    if (best_assignment[i]) pool.push_back(static_cast<int>(i));
  // Every selected test enters some prefix: ordering, not selection.
  return filter3(run_greedy(suite, costs, pool, /*require_value=*/false));
}

}  // namespace tsopt
