#include "tsopt/bootstrap.hpp"

#include <algorithm>
#include <numeric>

#include "tsopt/errors.hpp"
#include "tsopt/rng.hpp"

namespace tsopt {

BootstrapResult bootstrap_solve(const TestSuite& suite, const NormalizedCosts& costs,
                                double alpha, const BootstrapConfig& bconfig,
                                const AnnealConfig& aconfig) {
  const int total = suite.num_cases();
  if (total == 0) throw ValidationError("bootstrap solving needs a nonempty suite");
  if (bconfig.n < 1 || bconfig.n > total)
    throw ValidationError("sub-suite size n must be in [1, " + std::to_string(total) +
                          "], got " + std::to_string(bconfig.n));
  if (bconfig.m < 1) throw ValidationError("number of sub-suites m must be >= 1");
  if (!(bconfig.beta_coverage > 0.0 && bconfig.beta_coverage <= 1.0))
    throw ValidationError("beta_coverage must lie in (0, 1]");

  BootstrapResult result;
  result.solution.assignment.assign(total, 0);
  std::vector<std::uint8_t> sampled(total, 0);

  for (int s = 0; s < bconfig.m; ++s) {
    // Partial Fisher-Yates: n distinct cases, uniform over the suite.
    SplitMix64 rng(mix_seed(bconfig.seed, static_cast<std::uint64_t>(s)));
    std::vector<int> ids(total);
    std::iota(ids.begin(), ids.end(), 0);
    for (int k = 0; k < bconfig.n; ++k) {
      const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - k)));
      std::swap(ids[k], ids[pick]);
    }
    ids.resize(bconfig.n);
    std::sort(ids.begin(), ids.end());
    for (int g : ids) sampled[g] = 1;

    // Sub-problem over the sampled cases, with globally normalized costs.
    std::vector<TestCase> sub_cases;
    NormalizedCosts sub_costs;
    sub_cases.reserve(ids.size());
    sub_costs.values.reserve(ids.size());
    for (int g : ids) {
      TestCase tc = suite.cases[g];
      tc.covered_statements.clear();
      sub_cases.push_back(std::move(tc));
      sub_costs.values.push_back(costs.values[g]);
    }
    const TestSuite sub_suite = TestSuite::build(std::move(sub_cases));
    const QuboModel sub_model = build_two_objective_qubo(sub_suite, sub_costs, alpha);

    AnnealConfig sub_config = aconfig;
    sub_config.seed = mix_seed(aconfig.seed, static_cast<std::uint64_t>(s));
    const SampleSet samples = solve_sa(sub_model, sub_config);

    std::vector<int> chosen;
    const Sample& best = samples.best();
    for (std::size_t local = 0; local < ids.size(); ++local) {
      if (!best.assignment[local]) continue;
      chosen.push_back(ids[local]);
      result.solution.assignment[ids[local]] = 1;
    }
    result.subsets.push_back(std::move(ids));
    result.sub_selections.push_back(std::move(chosen));
  }

  int distinct = 0;
  for (std::uint8_t s : sampled) distinct += s;
  result.achieved_coverage = static_cast<double>(distinct) / static_cast<double>(total);
  result.coverage_met = result.achieved_coverage >= bconfig.beta_coverage;
  result.solution.objectives =
      objectives_of(evaluate_objectives2(suite, costs, result.solution.assignment));
  return result;
}

}  // namespace tsopt
