// Microbenchmarks for the hot paths: annealing sweeps, model assembly,
// the reference-frontier filter and the U test.

#include <benchmark/benchmark.h>

#include <vector>

#include "tsopt/greedy.hpp"
#include "tsopt/pareto.hpp"
#include "tsopt/qubo.hpp"
#include "tsopt/rng.hpp"
#include "tsopt/sa.hpp"
#include "tsopt/stats.hpp"
#include "tsopt/test_suite.hpp"

namespace {

using namespace tsopt;

TestSuite random_suite(int cases, int statements, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<TestCase> raw(cases);
  for (TestCase& tc : raw) {
    tc.raw_cost = 1.0 + rng.canonical() * 9.0;
    tc.fault_flag = rng.below(4) == 0 ? 1 : 0;
    for (int k = 0; k < statements; ++k)
      if (rng.below(4) == 0) tc.covered_statements.push_back(k);
  }
  return TestSuite::build(std::move(raw));
}

void bench_solve_sa(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TestSuite suite = random_suite(n, n * 2, 7);
  const NormalizedCosts costs = normalize_costs(suite);
  const QuboModel model = build_three_objective_qubo(suite, costs, 0.5);
  AnnealConfig config;
  config.num_reads = 10;
  config.sweeps = 100;
  config.seed = 11;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_sa(model, config));
  }
}
BENCHMARK(bench_solve_sa)->Arg(64)->Arg(256);

void bench_build_three_objective(benchmark::State& state) {
  const TestSuite suite = random_suite(200, 400, 3);
  const NormalizedCosts costs = normalize_costs(suite);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_three_objective_qubo(suite, costs, 0.5));
  }
}
BENCHMARK(bench_build_three_objective);

void bench_reference_frontier(benchmark::State& state) {
  SplitMix64 rng(19);
  ParetoArchive archive;
  archive.senses = senses3();
  for (int i = 0; i < 500; ++i) {
    SelectionSolution s;
    s.objectives = {rng.canonical() * 10.0, static_cast<double>(rng.below(50)),
                    static_cast<double>(rng.below(10))};
    archive.members.push_back(std::move(s));
  }
  const std::vector<ParetoArchive> frontiers{archive};
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference_frontier(frontiers));
  }
}
BENCHMARK(bench_reference_frontier);

void bench_mann_whitney(benchmark::State& state) {
  SplitMix64 rng(23);
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    x.push_back(rng.canonical());
    y.push_back(rng.canonical() + 0.1);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mann_whitney_u(x, y, Alternative::TwoSided));
  }
}
BENCHMARK(bench_mann_whitney);

}  // namespace

BENCHMARK_MAIN();
