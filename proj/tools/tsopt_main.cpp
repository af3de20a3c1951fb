// tsopt: command-line front end for the test-suite optimization toolkit.
//
// Subcommands: build-qubo, solve, greedy, bootqa, frontier, stats,
// experiment.  Exit codes: 0 success, 2 bad arguments/parameters,
// 3 unreadable or malformed data.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsopt/bootstrap.hpp"
#include "tsopt/dataset_io.hpp"
#include "tsopt/errors.hpp"
#include "tsopt/experiment.hpp"
#include "tsopt/greedy.hpp"
#include "tsopt/pareto.hpp"
#include "tsopt/qubo.hpp"
#include "tsopt/sa.hpp"
#include "tsopt/stats.hpp"
#include "tsopt/text.hpp"

namespace {

using namespace tsopt;

struct DatasetFlags {
  std::string coverage, costs, faults, dataset;
  std::string mode = "three";
  bool keep_zero_rate = false;
};

void add_dataset_flags(CLI::App* sub, DatasetFlags& flags) {
  sub->add_option("--coverage", flags.coverage, "Coverage file: '<test_id>: <s1> <s2> ...'");
  sub->add_option("--costs", flags.costs, "Cost file: 'test_id,raw_cost'");
  sub->add_option("--faults", flags.faults, "Fault file: 'test_id,fault_id'");
  sub->add_option("--dataset", flags.dataset, "Two-objective CSV: 'id,time,rate[,rate_unit=...]'");
  sub->add_option("--mode", flags.mode, "Objective mode")
      ->check(CLI::IsMember({"three", "two"}))
      ->capture_default_str();
  sub->add_flag("--keep-zero-rate", flags.keep_zero_rate,
                "Keep two-objective rows whose failure rate is 0 (default: drop them)");
}

Mode mode_of(const DatasetFlags& flags) {
  return flags.mode == "three" ? Mode::ThreeObjective : Mode::TwoObjective;
}

TestSuite load_suite(const DatasetFlags& flags) {
  if (mode_of(flags) == Mode::ThreeObjective) {
    if (flags.coverage.empty() || flags.costs.empty() || flags.faults.empty())
      throw ValidationError("three-objective mode needs --coverage, --costs and --faults");
    if (!flags.dataset.empty())
      throw ValidationError("--dataset belongs to two-objective mode");
    return load_three_objective_dataset(flags.coverage, flags.costs, flags.faults);
  }
  if (flags.dataset.empty()) throw ValidationError("two-objective mode needs --dataset");
  if (!flags.coverage.empty() || !flags.costs.empty() || !flags.faults.empty())
    throw ValidationError("--coverage/--costs/--faults belong to three-objective mode");
  return load_two_objective_dataset(flags.dataset, !flags.keep_zero_rate);
}

QuboModel build_model(const DatasetFlags& flags, const TestSuite& suite,
                      const NormalizedCosts& costs, double alpha,
                      std::optional<double> penalty) {
  if (mode_of(flags) == Mode::ThreeObjective)
    return build_three_objective_qubo(suite, costs, alpha, penalty);
  if (penalty) throw ValidationError("--penalty applies to three-objective mode only");
  return build_two_objective_qubo(suite, costs, alpha);
}

std::string selection_text(const std::vector<std::uint8_t>& assignment) {
  std::string out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i]) {
      if (!out.empty()) out += ' ';
      out += std::to_string(i);
    }
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Test-suite optimization: QUBO models, annealing, baselines, evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tsopt 0.1.0");

  // ---- build-qubo ----------------------------------------------------
  auto* build_cmd = app.add_subcommand("build-qubo", "Build a model and write its text form");
  DatasetFlags build_flags;
  double build_alpha = 0.5;
  double build_penalty = 0.0;
  std::string build_out;
  add_dataset_flags(build_cmd, build_flags);
  build_cmd->add_option("--alpha", build_alpha, "Cost-vs-value weight in (0,1)")
      ->capture_default_str();
  auto* build_penalty_opt =
      build_cmd->add_option("--penalty", build_penalty, "Constraint penalty P (default: upper-bound rule)");
  build_cmd->add_option("--out", build_out, "Output model file")->required();

  // ---- solve ----------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "Sample a model with simulated annealing");
  DatasetFlags solve_flags;
  std::string solve_qubo, solve_out;
  double solve_alpha = 0.5;
  double solve_penalty = 0.0;
  int solve_reads = 100, solve_sweeps = 1000;
  double solve_beta0 = 0.0, solve_beta1 = 0.0;
  std::uint64_t solve_seed = 0;
  bool solve_exact_flag = false;
  add_dataset_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--qubo", solve_qubo, "Pre-built model file (instead of dataset flags)");
  solve_cmd->add_option("--alpha", solve_alpha, "Cost-vs-value weight in (0,1)")
      ->capture_default_str();
  auto* solve_penalty_opt =
      solve_cmd->add_option("--penalty", solve_penalty, "Constraint penalty P (default: upper-bound rule)");
  solve_cmd->add_option("--reads", solve_reads, "Independent annealing reads")->capture_default_str();
  solve_cmd->add_option("--sweeps", solve_sweeps, "Sweeps per read")->capture_default_str();
  auto* solve_beta0_opt = solve_cmd->add_option("--beta-initial", solve_beta0, "Initial inverse temperature");
  auto* solve_beta1_opt = solve_cmd->add_option("--beta-final", solve_beta1, "Final inverse temperature");
  solve_cmd->add_option("--seed", solve_seed, "Random seed")->capture_default_str();
  solve_cmd->add_flag("--exact", solve_exact_flag, "Enumerate exhaustively (<= 24 variables)");
  solve_cmd->add_option("--out", solve_out, "Write samples: '<energy> <count> <bits>' per line");

  // ---- greedy ---------------------------------------------------------
  auto* greedy_cmd = app.add_subcommand("greedy", "Additional-greedy baseline (three-objective)");
  DatasetFlags greedy_flags;
  std::string greedy_out;
  add_dataset_flags(greedy_cmd, greedy_flags);
  greedy_cmd->add_option("--out", greedy_out, "Write the non-dominated archive as a frontier file");

  // ---- bootqa ---------------------------------------------------------
  auto* boot_cmd = app.add_subcommand("bootqa", "Bootstrap-decomposed two-objective solve");
  std::string boot_dataset, boot_out;
  bool boot_keep_zero = false;
  double boot_alpha = 0.5, boot_beta_cov = 1.0;
  int boot_n = 1, boot_m = 1, boot_reads = 100, boot_sweeps = 1000;
  std::uint64_t boot_seed = 0;
  boot_cmd->add_option("--dataset", boot_dataset, "Two-objective CSV")->required();
  boot_cmd->add_flag("--keep-zero-rate", boot_keep_zero,
                     "Keep rows whose failure rate is 0 (default: drop them)");
  boot_cmd->add_option("--alpha", boot_alpha, "Cost-vs-value weight in (0,1)")->capture_default_str();
  boot_cmd->add_option("--n", boot_n, "Sub-suite size")->required();
  boot_cmd->add_option("--m", boot_m, "Number of sub-suites")->required();
  boot_cmd->add_option("--beta-coverage", boot_beta_cov, "Target distinct-case fraction in (0,1]")
      ->capture_default_str();
  boot_cmd->add_option("--reads", boot_reads, "Independent annealing reads")->capture_default_str();
  boot_cmd->add_option("--sweeps", boot_sweeps, "Sweeps per read")->capture_default_str();
  boot_cmd->add_option("--seed", boot_seed, "Random seed")->capture_default_str();
  boot_cmd->add_option("--out", boot_out, "Write the merged solution record");

  // ---- frontier ---------------------------------------------------------
  auto* frontier_cmd = app.add_subcommand("frontier", "Merge frontier files into the reference frontier");
  std::vector<std::string> frontier_inputs;
  std::string frontier_mode = "three", frontier_out, frontier_counts;
  frontier_cmd->add_option("inputs", frontier_inputs, "Frontier files")->required()->expected(-1);
  frontier_cmd->add_option("--mode", frontier_mode, "Objective mode")
      ->check(CLI::IsMember({"three", "two"}))
      ->capture_default_str();
  frontier_cmd->add_option("--out", frontier_out, "Reference frontier output file")->required();
  frontier_cmd->add_option("--counts", frontier_counts,
                           "Also write per-(algorithm,run) non-dominated counts");

  // ---- stats ------------------------------------------------------------
  auto* stats_cmd = app.add_subcommand("stats", "Mann-Whitney U + A12 on two sample files");
  std::string stats_x, stats_y, stats_alt = "two-sided", stats_method = "auto";
  std::string stats_hypothesis = "x vs y", stats_out;
  stats_cmd->add_option("--x", stats_x, "First sample, one number per line")->required();
  stats_cmd->add_option("--y", stats_y, "Second sample, one number per line")->required();
  stats_cmd->add_option("--alternative", stats_alt, "Hypothesis direction")
      ->check(CLI::IsMember({"greater", "less", "two-sided"}))
      ->capture_default_str();
  stats_cmd->add_option("--method", stats_method, "p-value method")
      ->check(CLI::IsMember({"auto", "exact", "normal"}))
      ->capture_default_str();
  stats_cmd->add_option("--hypothesis", stats_hypothesis, "Label for the report row")
      ->capture_default_str();
  stats_cmd->add_option("--out", stats_out, "Write the report row to a file");

  // ---- experiment ---------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("experiment", "Run the full multi-run evaluation protocol");
  DatasetFlags exp_flags;
  std::string exp_algorithms, exp_out;
  int exp_runs = 10, exp_reads = 100, exp_sweeps = 1000, exp_n = 1, exp_m = 1, exp_threads = 1;
  double exp_alpha = 0.5, exp_penalty = 0.0, exp_beta_cov = 1.0;
  double exp_beta0 = 0.0, exp_beta1 = 0.0;
  std::uint64_t exp_seed = 0;
  add_dataset_flags(exp_cmd, exp_flags);
  exp_cmd->add_option("--algorithms", exp_algorithms,
                      "Comma-separated subset of selectqa,greedy,bootqa,exact (default per mode)");
  exp_cmd->add_option("--runs", exp_runs, "Independent runs per algorithm")->capture_default_str();
  exp_cmd->add_option("--alpha", exp_alpha, "Cost-vs-value weight in (0,1)")->capture_default_str();
  auto* exp_penalty_opt =
      exp_cmd->add_option("--penalty", exp_penalty, "Constraint penalty P (default: upper-bound rule)");
  exp_cmd->add_option("--reads", exp_reads, "Independent annealing reads")->capture_default_str();
  exp_cmd->add_option("--sweeps", exp_sweeps, "Sweeps per read")->capture_default_str();
  auto* exp_beta0_opt = exp_cmd->add_option("--beta-initial", exp_beta0, "Initial inverse temperature");
  auto* exp_beta1_opt = exp_cmd->add_option("--beta-final", exp_beta1, "Final inverse temperature");
  exp_cmd->add_option("--n", exp_n, "Bootstrap sub-suite size")->capture_default_str();
  exp_cmd->add_option("--m", exp_m, "Bootstrap sub-suite count")->capture_default_str();
  exp_cmd->add_option("--beta-coverage", exp_beta_cov, "Bootstrap target coverage in (0,1]")
      ->capture_default_str();
  exp_cmd->add_option("--seed", exp_seed, "Master seed; run seed = seed + run index")
      ->capture_default_str();
  exp_cmd->add_option("--threads", exp_threads, "Worker threads (<= 0: hardware)")
      ->capture_default_str();
  exp_cmd->add_option("--out", exp_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 2;
  }

  // ---- dispatch ------------------------------------------------------
  if (app.got_subcommand(build_cmd)) {
    const TestSuite suite = load_suite(build_flags);
    const NormalizedCosts costs = normalize_costs(suite);
    std::optional<double> penalty;
    if (build_penalty_opt->count()) penalty = build_penalty;
    const QuboModel model = build_model(build_flags, suite, costs, build_alpha, penalty);
    save_qubo(model, build_out);
    std::cout << "wrote " << build_out << ": " << model.num_vars << " variables, "
              << model.quadratic.size() << " quadratic terms, offset "
              << format_g(model.offset) << "\n";
    return 0;
  }

  if (app.got_subcommand(solve_cmd)) {
    QuboModel model;
    if (!solve_qubo.empty()) {
      if (!solve_flags.coverage.empty() || !solve_flags.dataset.empty())
        throw ValidationError("--qubo replaces the dataset flags; give one or the other");
      model = load_qubo(solve_qubo);
    } else {
      const TestSuite suite = load_suite(solve_flags);
      const NormalizedCosts costs = normalize_costs(suite);
      std::optional<double> penalty;
      if (solve_penalty_opt->count()) penalty = solve_penalty;
      model = build_model(solve_flags, suite, costs, solve_alpha, penalty);
    }
    SampleSet samples;
    if (solve_exact_flag) {
      samples = solve_exact(model);
    } else {
      AnnealConfig config;
      config.num_reads = solve_reads;
      config.sweeps = solve_sweeps;
      if (solve_beta0_opt->count()) config.beta_initial = solve_beta0;
      if (solve_beta1_opt->count()) config.beta_final = solve_beta1;
      config.seed = solve_seed;
      samples = solve_sa(model, config);
    }
    const Sample& best = samples.best();
    std::cout << "best energy " << format_g(best.energy) << ", " << samples.samples.size()
              << " distinct samples\n";
    std::cout << "selection: " << selection_text(best.assignment) << "\n";
    if (!solve_out.empty()) {
      std::string out;
      for (const Sample& s : samples.samples) {
        out += format_g(s.energy);
        out += ' ';
        out += std::to_string(s.num_occurrences);
        out += ' ';
        for (std::uint8_t bit : s.assignment) out += bit ? '1' : '0';
        out += '\n';
      }
      write_file(solve_out, out);
    }
    return 0;
  }

  if (app.got_subcommand(greedy_cmd)) {
    if (mode_of(greedy_flags) != Mode::ThreeObjective)
      throw ValidationError("greedy runs on three-objective datasets only");
    const TestSuite suite = load_suite(greedy_flags);
    const NormalizedCosts costs = normalize_costs(suite);
    std::vector<SelectionSolution> archive = additional_greedy(suite, costs);
    for (SelectionSolution& s : archive) s.provenance = {{"greedy", 0}};
    std::cout << "non-dominated archive: " << archive.size() << " of at most "
              << suite.num_cases() << " candidates\n";
    if (!greedy_out.empty())
      save_frontier_file(ParetoArchive{senses3(), archive}, greedy_out);
    return 0;
  }

  if (app.got_subcommand(boot_cmd)) {
    const TestSuite suite = load_two_objective_dataset(boot_dataset, !boot_keep_zero);
    if (suite.num_cases() == 0) throw ValidationError("the dataset has no test cases");
    const NormalizedCosts costs = normalize_costs(suite);
    BootstrapConfig bconfig;
    bconfig.n = boot_n;
    bconfig.m = boot_m;
    bconfig.beta_coverage = boot_beta_cov;
    bconfig.seed = boot_seed;
    AnnealConfig aconfig;
    aconfig.num_reads = boot_reads;
    aconfig.sweeps = boot_sweeps;
    aconfig.seed = boot_seed;
    const BootstrapResult result = bootstrap_solve(suite, costs, boot_alpha, bconfig, aconfig);
    std::cout << "merged selection: cost " << format_g(result.solution.objectives[0])
              << ", failure rate " << format_g(result.solution.objectives[1])
              << ", sampled coverage " << format_g(result.achieved_coverage)
              << (result.coverage_met ? " (met)" : " (below target)") << "\n";
    std::cout << "selection: " << selection_text(result.solution.assignment) << "\n";
    if (!boot_out.empty()) {
      std::ostringstream out;
      int selected = 0;
      for (std::uint8_t bit : result.solution.assignment) selected += bit;
      out << "bootqa 0 " << format_g(result.solution.objectives[0]) << " "
          << format_g(result.solution.objectives[1]) << " "
          << format_g(result.achieved_coverage) << " " << (result.coverage_met ? 1 : 0) << " "
          << selected;
      for (std::size_t i = 0; i < result.solution.assignment.size(); ++i)
        if (result.solution.assignment[i]) out << " " << i;
      out << "\n";
      write_file(boot_out, out.str());
    }
    return 0;
  }

  if (app.got_subcommand(frontier_cmd)) {
    const std::vector<Sense> senses = frontier_mode == "three" ? senses3() : senses2();
    std::vector<ParetoArchive> archives;
    archives.reserve(frontier_inputs.size());
    for (const std::string& path : frontier_inputs)
      archives.push_back(load_frontier_file(path, senses));
    const ParetoArchive reference = reference_frontier(archives);
    save_frontier_file(reference, frontier_out);
    std::cout << "reference frontier: " << reference.members.size() << " members\n";
    if (!frontier_counts.empty()) {
      // Group every input member by (algorithm, run) and count how many
      // survive against the reference.
      std::vector<std::pair<std::string, int>> keys;
      std::map<std::pair<std::string, int>, ParetoArchive> groups;
      for (const ParetoArchive& archive : archives)
        for (const SelectionSolution& member : archive.members) {
          const auto key = std::make_pair(member.provenance.at(0).algorithm,
                                          member.provenance.at(0).run);
          if (!groups.count(key)) {
            keys.push_back(key);
            groups[key].senses = senses;
          }
          groups[key].members.push_back(member);
        }
      std::ostringstream out;
      for (const auto& key : keys) {
        const ParetoArchive& group = groups[key];
        out << key.first << " " << key.second << " " << group.members.size() << " "
            << count_nondominated(group, reference) << "\n";
      }
      write_file(frontier_counts, out.str());
    }
    return 0;
  }

  if (app.got_subcommand(stats_cmd)) {
    const auto load_samples = [](const std::string& path) {
      std::vector<double> values;
      const std::vector<std::string> lines = split(read_file(path), '\n');
      for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string line = trim(lines[ln]);
        if (line.empty()) continue;
        values.push_back(parse_double(line, path + ":" + std::to_string(ln + 1)));
      }
      return values;
    };
    const std::vector<double> x = load_samples(stats_x);
    const std::vector<double> y = load_samples(stats_y);
    const Alternative alternative = stats_alt == "greater" ? Alternative::Greater
                                    : stats_alt == "less"  ? Alternative::Less
                                                           : Alternative::TwoSided;
    const UMethod method = stats_method == "exact"    ? UMethod::Exact
                           : stats_method == "normal" ? UMethod::Normal
                                                      : UMethod::Auto;
    StatReport report;
    report.hypothesis = stats_hypothesis;
    report.p_value = mann_whitney_u(x, y, alternative, method);
    report.a12 = vargha_delaney_a12(x, y);
    report.magnitude = classify_magnitude(report.a12);
    report.significant = report.p_value < 0.05;
    std::cout << format_stat_reports({report});
    if (!stats_out.empty()) save_stat_reports({report}, stats_out);
    return 0;
  }

  // experiment
  ExperimentConfig config;
  config.coverage_path = exp_flags.coverage;
  config.cost_path = exp_flags.costs;
  config.fault_path = exp_flags.faults;
  config.dataset_path = exp_flags.dataset;
  config.drop_zero_rate = !exp_flags.keep_zero_rate;
  config.mode = mode_of(exp_flags);
  if (!exp_algorithms.empty())
    for (const std::string& name : split(exp_algorithms, ','))
      config.algorithms.push_back(trim(name));
  config.runs = exp_runs;
  config.alpha = exp_alpha;
  if (exp_penalty_opt->count()) config.penalty = exp_penalty;
  config.anneal.num_reads = exp_reads;
  config.anneal.sweeps = exp_sweeps;
  if (exp_beta0_opt->count()) config.anneal.beta_initial = exp_beta0;
  if (exp_beta1_opt->count()) config.anneal.beta_final = exp_beta1;
  config.bootstrap.n = exp_n;
  config.bootstrap.m = exp_m;
  config.bootstrap.beta_coverage = exp_beta_cov;
  config.seed = exp_seed;
  config.out_dir = exp_out;
  config.threads = exp_threads;

  const ExperimentReport report = run_experiment(config);
  std::cout << "wrote " << exp_out
            << "/{frontier,reference,counts,stats,solutions,meta}.txt\n";
  std::cout << "reference frontier: " << report.reference.members.size() << " members\n";
  for (const std::string& algorithm : report.algorithms) {
    double frontier_sum = 0.0, nondom_sum = 0.0, wall_sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < report.records.size(); ++i) {
      if (report.records[i].algorithm != algorithm) continue;
      frontier_sum += static_cast<double>(report.records[i].frontier.size());
      nondom_sum += report.nondominated_counts[i];
      wall_sum += report.records[i].wall_ms;
      ++n;
    }
    std::cout << algorithm << ": mean frontier size " << format_g(frontier_sum / n, 6)
              << ", mean non-dominated " << format_g(nondom_sum / n, 6) << ", wall clock "
              << format_g(wall_sum, 6) << " ms\n";
  }
  for (const StatReport& s : report.stats)
    std::cout << s.hypothesis << ": p=" << format_g(s.p_value, 6) << " A12=" << format_g(s.a12, 6)
              << " " << to_string(s.magnitude) << (s.significant ? " (significant)" : "") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "tsopt: error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "tsopt: error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "tsopt: internal error: " << e.what() << "\n";
    return 1;
  }
}
