#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsopt/qubo.hpp"

namespace tsopt {

/// Simulated-annealing parameters.  When the betas are unset they are
/// derived from the model: beta_initial so the worst single flip is
/// accepted with probability ~1/2, beta_final so it is accepted with
/// probability ~1e-4.
struct AnnealConfig {
  int num_reads = 100;
  int sweeps = 1000;
  std::optional<double> beta_initial;
  std::optional<double> beta_final;
  std::uint64_t seed = 0;
};

/// One sampled assignment with its exact energy and how many reads
/// produced it.
struct Sample {
  std::vector<std::uint8_t> assignment;
  double energy = 0.0;
  int num_occurrences = 1;
};

/// Samples sorted ascending by (energy, assignment); best first.
struct SampleSet {
  std::vector<Sample> samples;

  const Sample& best() const;
};

/// Runs `num_reads` independent single-flip Metropolis chains over a
/// geometric inverse-temperature schedule.  Each read draws its random
/// stream from (seed, read index), so results are identical no matter
/// how reads are scheduled.  Reported energies are exact re-evaluations
/// of the best assignment each read visited.
SampleSet solve_sa(const QuboModel& model, const AnnealConfig& config);

/// Enumerates all 2^n assignments (Gray-code order, incremental energy)
/// and returns every assignment attaining the global minimum, sorted.
/// Guarded to num_vars <= 24; beyond that throws ValidationError.
SampleSet solve_exact(const QuboModel& model);

}  // namespace tsopt
