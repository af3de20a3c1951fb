#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsopt/bootstrap.hpp"
#include "tsopt/pareto.hpp"
#include "tsopt/sa.hpp"
#include "tsopt/stats.hpp"
#include "tsopt/test_suite.hpp"

namespace tsopt {

enum class Mode { ThreeObjective, TwoObjective };

std::string to_string(Mode mode);

/// Full experiment description.  Seeds for annealing and bootstrap
/// sampling are derived from `seed` and the run index (run seed =
/// master seed + run index), so the seed fields inside `anneal` and
/// `bootstrap` are ignored here.  `threads` > 1 executes the
/// algorithm-by-run grid concurrently; outputs are identical for any
/// thread count.  An empty `out_dir` skips file emission.
struct ExperimentConfig {
  std::string coverage_path;  // three-objective inputs
  std::string cost_path;
  std::string fault_path;
  std::string dataset_path;   // two-objective input
  bool drop_zero_rate = true;
  Mode mode = Mode::ThreeObjective;
  std::vector<std::string> algorithms;  // empty -> mode default
  int runs = 10;
  double alpha = 0.5;
  std::optional<double> penalty;        // unset -> upper-bound rule
  AnnealConfig anneal;
  BootstrapConfig bootstrap;
  std::uint64_t seed = 0;
  std::string out_dir;
  int threads = 1;                      // <= 0 -> hardware concurrency
};

/// Outcome of one (algorithm, run) cell.
struct RunRecord {
  std::string algorithm;
  int run = 0;
  SelectionSolution best;                  ///< the run's full selection
  std::vector<SelectionSolution> frontier; ///< members fed to the reference
  double wall_ms = 0.0;                    ///< reported, never written to files
  std::optional<double> achieved_coverage; ///< bootstrap only
  std::optional<bool> coverage_met;        ///< bootstrap only
};

struct ExperimentReport {
  Mode mode = Mode::ThreeObjective;
  std::vector<std::string> algorithms;     ///< canonical order
  std::vector<RunRecord> records;          ///< algorithm-major, then run
  ParetoArchive reference;
  std::vector<int> nondominated_counts;    ///< aligned with records
  std::vector<StatReport> stats;
  double resolved_penalty = 0.0;           ///< three-objective mode only
};

/// Known algorithm names in canonical order:
/// selectqa, greedy, bootqa, exact.
const std::vector<std::string>& algorithm_order();

/// Runs the full protocol: every algorithm `runs` times, per-run
/// frontiers, the cross-algorithm reference frontier, non-dominated
/// counts and pairwise hypothesis tests; emits frontier.txt,
/// reference.txt, counts.txt, stats.txt, solutions.txt and meta.txt
/// into `out_dir`.  Output bytes are a pure function of (config minus
/// threads, input files).  On failure partial outputs are removed.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace tsopt
