#include "tsopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <sstream>
#include <thread>

#include "tsopt/dataset_io.hpp"
#include "tsopt/errors.hpp"
#include "tsopt/greedy.hpp"
#include "tsopt/qubo.hpp"
#include "tsopt/rng.hpp"
#include "tsopt/text.hpp"

namespace tsopt {

namespace {

const char* kOutputFiles[] = {"frontier.txt", "reference.txt", "counts.txt",
                              "stats.txt",    "solutions.txt", "meta.txt"};

int algorithm_rank(const std::string& name) {
  const std::vector<std::string>& order = algorithm_order();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == name) return static_cast<int>(i);
  throw ValidationError("unknown algorithm '" + name + "' (known: selectqa, greedy, bootqa, exact)");
}

std::vector<std::string> resolve_algorithms(const ExperimentConfig& config, int num_cases) {
  std::vector<std::string> algos = config.algorithms;
  if (algos.empty()) {
    algos = config.mode == Mode::ThreeObjective
                ? std::vector<std::string>{"selectqa", "greedy"}
                : std::vector<std::string>{"selectqa", "bootqa"};
  }
  std::sort(algos.begin(), algos.end(),
            [](const std::string& a, const std::string& b) {
              return algorithm_rank(a) < algorithm_rank(b);
            });
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());
  for (const std::string& a : algos) {
    if (a == "bootqa" && config.mode != Mode::TwoObjective)
      throw ValidationError("bootqa runs on two-objective datasets only");
    if (a == "greedy" && config.mode != Mode::ThreeObjective)
      throw ValidationError("greedy runs on three-objective datasets only");
    if (a == "exact" && num_cases > 24)
      throw ValidationError("exact enumeration is limited to 24 cases, the dataset has " +
                            std::to_string(num_cases));
  }
  return algos;
}

/// Rethrows a module error with (algorithm, run) context, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string& algorithm, int run) {
  const std::string where = "algorithm " + algorithm + " run " + std::to_string(run) + ": ";
  try {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(where + e.what());
  } catch (const DataError& e) {
    throw DataError(where + e.what());
  } catch (const std::exception& e) {
    throw Error(where + e.what());
  }
}

struct TaskContext {
  const ExperimentConfig& config;
  const TestSuite& suite;
  const NormalizedCosts& costs;
  const QuboModel& model;  // whole-problem model for the mode
};

RunRecord run_cell(const TaskContext& ctx, const std::string& algorithm, int run) {
  RunRecord record;
  record.algorithm = algorithm;
  record.run = run;
  const std::uint64_t run_seed = ctx.config.seed + static_cast<std::uint64_t>(run);
  const std::uint64_t cell_seed =
      mix_seed(run_seed, static_cast<std::uint64_t>(algorithm_rank(algorithm)));

  AnnealConfig anneal = ctx.config.anneal;
  anneal.seed = cell_seed;

  std::vector<std::uint8_t> assignment;
  if (algorithm == "selectqa") {
    assignment = solve_sa(ctx.model, anneal).best().assignment;
  } else if (algorithm == "exact") {
    assignment = solve_exact(ctx.model).best().assignment;
  } else if (algorithm == "bootqa") {
    BootstrapConfig bootstrap = ctx.config.bootstrap;
    bootstrap.seed = cell_seed;
    BootstrapResult result =
        bootstrap_solve(ctx.suite, ctx.costs, ctx.config.alpha, bootstrap, anneal);
    record.achieved_coverage = result.achieved_coverage;
    record.coverage_met = result.coverage_met;
    assignment = result.solution.assignment;
  } else {  // greedy: deterministic, candidates are the frontier
    record.frontier = greedy_candidates(ctx.suite, ctx.costs);
    if (record.frontier.empty()) {
      // Nothing had value to pick; the run's selection is empty.
      record.best.assignment.assign(ctx.suite.num_cases(), 0);
      record.best.objectives =
          objectives_of(evaluate_objectives3(ctx.suite, ctx.costs, record.best.assignment));
    } else {
      record.best = record.frontier.back();
    }
  }

  if (algorithm != "greedy") {
    record.best.assignment = assignment;
    if (ctx.config.mode == Mode::ThreeObjective) {
      record.best.objectives =
          objectives_of(evaluate_objectives3(ctx.suite, ctx.costs, assignment));
      record.frontier = extract_archive(ctx.suite, ctx.costs, assignment);
    } else {
      record.best.objectives =
          objectives_of(evaluate_objectives2(ctx.suite, ctx.costs, assignment));
      record.frontier = {record.best};
    }
  }

  for (SelectionSolution& member : record.frontier)
    member.provenance = {{algorithm, run}};
  record.best.provenance = {{algorithm, run}};
  return record;
}

std::string format_solutions(const ExperimentReport& report) {
  std::ostringstream out;
  for (const RunRecord& r : report.records) {
    out << r.algorithm << " " << r.run;
    for (double v : r.best.objectives) out << " " << format_g(v);
    if (report.mode == Mode::TwoObjective) {
      // Bootstrap rows report achieved sampling coverage; others dash.
      if (r.achieved_coverage)
        out << " " << format_g(*r.achieved_coverage) << " " << (*r.coverage_met ? 1 : 0);
      else
        out << " - -";
    }
    int selected = 0;
    for (std::uint8_t bit : r.best.assignment) selected += bit;
    out << " " << selected;
    for (std::size_t i = 0; i < r.best.assignment.size(); ++i)
      if (r.best.assignment[i]) out << " " << i;
    out << "\n";
  }
  return out.str();
}

std::string format_frontier(const ExperimentReport& report) {
  std::ostringstream out;
  for (const RunRecord& r : report.records)
    for (const SelectionSolution& member : r.frontier) {
      out << r.algorithm << " " << r.run;
      for (double v : member.objectives) out << " " << format_g(v);
      out << "\n";
    }
  return out.str();
}

std::string format_reference(const ExperimentReport& report) {
  std::ostringstream out;
  for (const SelectionSolution& member : report.reference.members)
    for (const Provenance& p : member.provenance) {
      out << p.algorithm << " " << p.run;
      for (double v : member.objectives) out << " " << format_g(v);
      out << "\n";
    }
  return out.str();
}

std::string format_counts(const ExperimentReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const RunRecord& r = report.records[i];
    out << r.algorithm << " " << r.run << " " << r.frontier.size() << " "
        << report.nondominated_counts[i] << "\n";
  }
  return out.str();
}

std::string format_meta(const ExperimentConfig& config, const ExperimentReport& report,
                        const TestSuite& suite) {
  std::ostringstream out;
  out << "mode=" << to_string(config.mode) << "\n";
  if (config.mode == Mode::ThreeObjective) {
    out << "coverage=" << config.coverage_path << "\n";
    out << "costs=" << config.cost_path << "\n";
    out << "faults=" << config.fault_path << "\n";
  } else {
    out << "dataset=" << config.dataset_path << "\n";
    out << "drop_zero_rate=" << (config.drop_zero_rate ? 1 : 0) << "\n";
  }
  out << "algorithms=";
  for (std::size_t i = 0; i < report.algorithms.size(); ++i)
    out << (i ? "," : "") << report.algorithms[i];
  out << "\n";
  out << "runs=" << config.runs << "\n";
  out << "alpha=" << format_g(config.alpha) << "\n";
  if (config.mode == Mode::ThreeObjective)
    out << "penalty=" << format_g(report.resolved_penalty) << "\n";
  out << "reads=" << config.anneal.num_reads << "\n";
  out << "sweeps=" << config.anneal.sweeps << "\n";
  out << "beta_initial="
      << (config.anneal.beta_initial ? format_g(*config.anneal.beta_initial) : "auto") << "\n";
  out << "beta_final="
      << (config.anneal.beta_final ? format_g(*config.anneal.beta_final) : "auto") << "\n";
  if (config.mode == Mode::TwoObjective &&
      std::find(report.algorithms.begin(), report.algorithms.end(), "bootqa") !=
          report.algorithms.end()) {
    out << "n=" << config.bootstrap.n << "\n";
    out << "m=" << config.bootstrap.m << "\n";
    out << "beta_coverage=" << format_g(config.bootstrap.beta_coverage) << "\n";
  }
  out << "seed=" << config.seed << "\n";
  out << "cases=" << suite.num_cases() << "\n";
  out << "statements=" << suite.num_statements() << "\n";
  return out.str();
}

void write_outputs(const ExperimentConfig& config, const ExperimentReport& report,
                   const TestSuite& suite) {
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + config.out_dir + "'");
  try {
    write_file((dir / "frontier.txt").string(), format_frontier(report));
    write_file((dir / "reference.txt").string(), format_reference(report));
    write_file((dir / "counts.txt").string(), format_counts(report));
    write_file((dir / "stats.txt").string(), format_stat_reports(report.stats));
    write_file((dir / "solutions.txt").string(), format_solutions(report));
    write_file((dir / "meta.txt").string(), format_meta(config, report, suite));
  } catch (...) {
    for (const char* name : kOutputFiles) fs::remove(dir / name, ec);
    throw;
  }
}

std::vector<StatReport> run_stats(const ExperimentReport& report) {
  // Per-algorithm, per-run sample vectors.
  const auto records_of = [&](const std::string& algorithm) {
    std::vector<const RunRecord*> rs;
    for (const RunRecord& r : report.records)
      if (r.algorithm == algorithm) rs.push_back(&r);
    return rs;
  };
  const auto counts_of = [&](const std::string& algorithm) {
    std::vector<double> v;
    for (std::size_t i = 0; i < report.records.size(); ++i)
      if (report.records[i].algorithm == algorithm)
        v.push_back(static_cast<double>(report.nondominated_counts[i]));
    return v;
  };

  std::vector<StatReport> stats;
  const std::vector<std::string>& algos = report.algorithms;
  if (algos.size() < 2) return stats;
  for (std::size_t a = 0; a < algos.size(); ++a) {
    for (std::size_t b = 0; b < algos.size(); ++b) {
      if (a == b) continue;
      if (report.mode == Mode::ThreeObjective) {
        // Directional hypothesis per ordered pair on non-dominated counts.
        stats.push_back(make_stat_report(algos[a] + ">" + algos[b] + " nondom",
                                         counts_of(algos[a]), counts_of(algos[b]),
                                         Alternative::Greater));
      } else if (a < b) {
        // One hypothesis pair per unordered pair: lower cost, higher rate.
        std::vector<double> cost_a, cost_b, rate_a, rate_b;
        for (const RunRecord* r : records_of(algos[a])) {
          cost_a.push_back(r->best.objectives[0]);
          rate_a.push_back(r->best.objectives[1]);
        }
        for (const RunRecord* r : records_of(algos[b])) {
          cost_b.push_back(r->best.objectives[0]);
          rate_b.push_back(r->best.objectives[1]);
        }
        stats.push_back(make_stat_report(algos[a] + "<" + algos[b] + " cost", cost_a, cost_b,
                                         Alternative::Less));
        stats.push_back(make_stat_report(algos[a] + ">" + algos[b] + " rate", rate_a, rate_b,
                                         Alternative::Greater));
      }
    }
  }
  return stats;
}

}  // namespace

std::string to_string(Mode mode) {
  return mode == Mode::ThreeObjective ? "three-objective" : "two-objective";
}

const std::vector<std::string>& algorithm_order() {
  static const std::vector<std::string> order{"selectqa", "greedy", "bootqa", "exact"};
  return order;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.runs < 1) throw ValidationError("runs must be >= 1");

  TestSuite suite;
  if (config.mode == Mode::ThreeObjective) {
    if (config.coverage_path.empty() || config.cost_path.empty() || config.fault_path.empty())
      throw ValidationError("three-objective mode needs --coverage, --costs and --faults");
    suite = load_three_objective_dataset(config.coverage_path, config.cost_path,
                                         config.fault_path);
  } else {
    if (config.dataset_path.empty())
      throw ValidationError("two-objective mode needs --dataset");
    suite = load_two_objective_dataset(config.dataset_path, config.drop_zero_rate);
  }
  if (suite.num_cases() == 0) throw ValidationError("the dataset has no test cases");

  const NormalizedCosts costs = normalize_costs(suite);

  ExperimentReport report;
  report.mode = config.mode;
  report.algorithms = resolve_algorithms(config, suite.num_cases());

  QuboModel model;
  if (config.mode == Mode::ThreeObjective) {
    model = build_three_objective_qubo(suite, costs, config.alpha, config.penalty);
    report.resolved_penalty = model.penalty;
  } else {
    model = build_two_objective_qubo(suite, costs, config.alpha);
    // Validate bootstrap parameters up front, not inside a worker.
    if (std::find(report.algorithms.begin(), report.algorithms.end(), "bootqa") !=
        report.algorithms.end()) {
      if (config.bootstrap.n < 1 || config.bootstrap.n > suite.num_cases())
        throw ValidationError("sub-suite size n must be in [1, " +
                              std::to_string(suite.num_cases()) + "], got " +
                              std::to_string(config.bootstrap.n));
      if (config.bootstrap.m < 1) throw ValidationError("number of sub-suites m must be >= 1");
      if (!(config.bootstrap.beta_coverage > 0.0 && config.bootstrap.beta_coverage <= 1.0))
        throw ValidationError("beta_coverage must lie in (0, 1]");
    }
  }

  const TaskContext ctx{config, suite, costs, model};

  // The algorithm-by-run grid, algorithm-major.  Each cell lands in its
  // own slot so any scheduling produces the same report.
  struct Cell {
    std::string algorithm;
    int run = 0;
  };
  std::vector<Cell> cells;
  for (const std::string& algorithm : report.algorithms)
    for (int run = 0; run < config.runs; ++run) cells.push_back({algorithm, run});

  std::vector<RunRecord> slots(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  const auto work = [&](std::size_t index) {
    const auto start = std::chrono::steady_clock::now();
    try {
      slots[index] = run_cell(ctx, cells[index].algorithm, cells[index].run);
    } catch (...) {
      try {
        rethrow_with_context(cells[index].algorithm, cells[index].run);
      } catch (...) {
        failures[index] = std::current_exception();
        return;
      }
    }
    slots[index].wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  };

  int threads = config.threads;
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<int>(threads, static_cast<int>(cells.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          work(i);
        }
      });
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& failure : failures)
    if (failure) std::rethrow_exception(failure);
  report.records = std::move(slots);

  // Reference frontier across every (algorithm, run) frontier.
  const std::vector<Sense> senses =
      config.mode == Mode::ThreeObjective ? senses3() : senses2();
  std::vector<ParetoArchive> frontiers;
  frontiers.reserve(report.records.size());
  for (const RunRecord& r : report.records)
    frontiers.push_back(ParetoArchive{senses, r.frontier});
  report.reference = reference_frontier(frontiers);

  report.nondominated_counts.reserve(report.records.size());
  for (std::size_t i = 0; i < report.records.size(); ++i)
    report.nondominated_counts.push_back(
        count_nondominated(frontiers[i], report.reference));

  report.stats = run_stats(report);

  if (!config.out_dir.empty()) write_outputs(config, report, suite);
  return report;
}

}  // namespace tsopt
