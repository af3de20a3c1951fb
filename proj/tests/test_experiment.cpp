#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tsopt/dataset_io.hpp"
#include "tsopt/errors.hpp"
#include "tsopt/experiment.hpp"
#include "tsopt/text.hpp"

using namespace tsopt;
using test_util::TempDir;

namespace {

// A 12-case two-objective table with a clear optimum: three cheap
// high-rate cases, the rest expensive and flat.
void write_two_objective_fixture(const std::string& path) {
  std::string csv = "id,time,rate\n";
  for (int i = 0; i < 3; ++i)
    csv += "v" + std::to_string(i) + ",0." + std::to_string(5 + i) + ",0.9\n";
  for (int i = 3; i < 12; ++i)
    csv += "c" + std::to_string(i) + "," + std::to_string(6 + (i % 4)) + ",0.1\n";
  write_file(path, csv);
}

// A 10-case three-objective dataset with a unique global optimum: the
// cheap fault-revealing trio t0..t2 partitions the statements, every
// alternative cover is far more expensive.
void write_three_objective_fixture(const TempDir& dir) {
  write_file(dir.file("cov.txt"),
             "t0: 0 1\n"
             "t1: 2 3\n"
             "t2: 4\n"
             "t3: 3 4\n"
             "t4: 4 0\n"
             "t5: 0 1\n"
             "t6: 1 2\n"
             "t7: 2 3\n"
             "t8: 3 4\n"
             "t9: 4 0\n");
  write_file(dir.file("cost.csv"),
             "t0,1\nt1,2\nt2,1.5\nt3,8\nt4,9\nt5,10\nt6,11\nt7,12\nt8,13\nt9,14\n");
  write_file(dir.file("fault.csv"), "t0,f1\nt2,f2\n");
}

ExperimentConfig two_objective_config(const TempDir& dir, const std::string& out_dir) {
  ExperimentConfig config;
  config.mode = Mode::TwoObjective;
  config.dataset_path = dir.file("data.csv");
  config.runs = 10;
  config.anneal.num_reads = 5;
  config.anneal.sweeps = 100;
  config.bootstrap.n = 4;
  config.bootstrap.m = 4;
  config.bootstrap.beta_coverage = 0.8;
  config.seed = 99;
  config.out_dir = out_dir;
  return config;
}

std::vector<std::string> nonempty_lines(const std::string& path) {
  std::vector<std::string> out;
  for (const std::string& line : split(read_file(path), '\n'))
    if (!trim(line).empty()) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("two-objective protocol produces the full output set") {
  TempDir dir;
  write_two_objective_fixture(dir.file("data.csv"));
  const ExperimentConfig config = two_objective_config(dir, dir.file("out"));
  const ExperimentReport report = run_experiment(config);

  CHECK(report.algorithms == std::vector<std::string>{"selectqa", "bootqa"});
  REQUIRE(report.records.size() == 20);  // 2 algorithms x 10 runs
  // Records are algorithm-major in canonical order.
  for (int i = 0; i < 10; ++i) {
    CHECK(report.records[i].algorithm == "selectqa");
    CHECK(report.records[i].run == i);
    CHECK(report.records[10 + i].algorithm == "bootqa");
    CHECK(report.records[10 + i].achieved_coverage.has_value());
    CHECK(report.records[10 + i].coverage_met.has_value());
    CHECK(!report.records[i].achieved_coverage.has_value());
  }

  // solutions.txt: one line per record; counts.txt likewise.
  CHECK(nonempty_lines(dir.file("out/solutions.txt")).size() == 20);
  const auto counts_lines = nonempty_lines(dir.file("out/counts.txt"));
  CHECK(counts_lines.size() == 20);
  // stats.txt: one cost and one rate hypothesis for the single pair.
  const auto stats_lines = nonempty_lines(dir.file("out/stats.txt"));
  REQUIRE(stats_lines.size() == 2);
  CHECK(stats_lines[0].find("cost") != std::string::npos);
  CHECK(stats_lines[1].find("rate") != std::string::npos);

  // Accounting: frontier.txt holds every per-run frontier line; the
  // sizes column in counts.txt must add up to it.
  std::size_t frontier_lines = nonempty_lines(dir.file("out/frontier.txt")).size();
  std::size_t total = 0;
  for (const std::string& line : counts_lines) {
    const auto fields = split_ws(line);
    REQUIRE(fields.size() == 4);
    total += static_cast<std::size_t>(parse_long(fields[2], "counts"));
  }
  CHECK(total == frontier_lines);

  // The reference frontier is mutually non-dominated and every count is
  // bounded by its run frontier size.
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    CHECK(report.nondominated_counts[i] >= 0);
    CHECK(report.nondominated_counts[i] <=
          static_cast<int>(report.records[i].frontier.size()));
  }
  for (std::size_t a = 0; a < report.reference.members.size(); ++a)
    for (std::size_t b = 0; b < report.reference.members.size(); ++b)
      if (a != b)
        CHECK(!dominates(report.reference.members[a].objectives,
                         report.reference.members[b].objectives, report.reference.senses));

  // meta.txt records the protocol inputs, never timing or thread count.
  const std::string meta = read_file(dir.file("out/meta.txt"));
  CHECK(meta.find("mode=two-objective") != std::string::npos);
  CHECK(meta.find("runs=10") != std::string::npos);
  CHECK(meta.find("threads") == std::string::npos);
  CHECK(meta.find("wall") == std::string::npos);
}

TEST_CASE("annealing matches the exact solver on a small fixture") {
  TempDir dir;
  write_three_objective_fixture(dir);
  ExperimentConfig config;
  config.mode = Mode::ThreeObjective;
  config.coverage_path = dir.file("cov.txt");
  config.cost_path = dir.file("cost.csv");
  config.fault_path = dir.file("fault.csv");
  config.algorithms = {"selectqa", "exact"};
  config.runs = 1;
  config.anneal.num_reads = 50;
  config.anneal.sweeps = 500;
  config.seed = 5;
  const ExperimentReport report = run_experiment(config);

  REQUIRE(report.records.size() == 2);
  const RunRecord& sampled = report.records[0];
  const RunRecord& exact = report.records[1];
  CHECK(sampled.algorithm == "selectqa");
  CHECK(exact.algorithm == "exact");
  // The annealer's best selection reaches the global optimum here, so
  // the full-selection objective vectors coincide.
  REQUIRE(sampled.best.objectives.size() == 3);
  CHECK(objectives_equal(sampled.best.objectives, exact.best.objectives));
  CHECK(report.resolved_penalty > 0.0);
}

TEST_CASE("greedy bookkeeping inside the protocol") {
  TempDir dir;
  write_three_objective_fixture(dir);
  ExperimentConfig config;
  config.mode = Mode::ThreeObjective;
  config.coverage_path = dir.file("cov.txt");
  config.cost_path = dir.file("cost.csv");
  config.fault_path = dir.file("fault.csv");
  config.algorithms = {"greedy"};
  config.runs = 3;
  config.anneal.num_reads = 2;
  config.anneal.sweeps = 20;
  const ExperimentReport report = run_experiment(config);
  REQUIRE(report.records.size() == 3);
  // Greedy is deterministic: every run yields the same frontier, sized
  // by its pick count (every cumulative prefix is a member).
  const std::size_t picks = report.records[0].frontier.size();
  CHECK(picks >= 1);
  CHECK(picks <= 10);
  for (const RunRecord& record : report.records) {
    CHECK(record.frontier.size() == picks);
    CHECK(record.best.objectives == report.records[0].best.objectives);
  }
}

TEST_CASE("experiment outputs are reproducible byte for byte") {
  TempDir dir;
  write_two_objective_fixture(dir.file("data.csv"));

  ExperimentConfig first = two_objective_config(dir, dir.file("a"));
  first.runs = 4;
  run_experiment(first);
  ExperimentConfig second = first;
  second.out_dir = dir.file("b");
  run_experiment(second);
  ExperimentConfig threaded = first;
  threaded.out_dir = dir.file("c");
  threaded.threads = 4;
  run_experiment(threaded);

  for (const char* name : {"frontier.txt", "reference.txt", "counts.txt", "stats.txt",
                           "solutions.txt", "meta.txt"}) {
    const std::string a = read_file(dir.file(std::string("a/") + name));
    CHECK(a == read_file(dir.file(std::string("b/") + name)));
    CHECK(a == read_file(dir.file(std::string("c/") + name)));
    CHECK(!a.empty());
  }
}

TEST_CASE("experiment configuration validation") {
  TempDir dir;
  write_two_objective_fixture(dir.file("data.csv"));
  write_three_objective_fixture(dir);

  ExperimentConfig config = two_objective_config(dir, "");
  SUBCASE("greedy needs coverage objectives") {
    config.algorithms = {"greedy"};
    CHECK_THROWS_AS(run_experiment(config), ValidationError);
  }
  SUBCASE("bootqa needs failure rates") {
    config.mode = Mode::ThreeObjective;
    config.coverage_path = dir.file("cov.txt");
    config.cost_path = dir.file("cost.csv");
    config.fault_path = dir.file("fault.csv");
    config.algorithms = {"bootqa"};
    CHECK_THROWS_AS(run_experiment(config), ValidationError);
  }
  SUBCASE("unknown algorithm name") {
    config.algorithms = {"selectqa", "tabu"};
    CHECK_THROWS_AS(run_experiment(config), ValidationError);
  }
  SUBCASE("runs must be positive") {
    config.runs = 0;
    CHECK_THROWS_AS(run_experiment(config), ValidationError);
  }
  SUBCASE("exact refuses oversized instances") {
    std::string csv = "id,time,rate\n";
    for (int i = 0; i < 30; ++i) csv += "t" + std::to_string(i) + ",1,0.5\n";
    write_file(dir.file("big.csv"), csv);
    config.dataset_path = dir.file("big.csv");
    config.algorithms = {"exact"};
    CHECK_THROWS_AS(run_experiment(config), ValidationError);
  }
  SUBCASE("empty dataset is rejected") {
    write_file(dir.file("empty.csv"), "id,time,rate\n");
    config.dataset_path = dir.file("empty.csv");
    CHECK_THROWS_AS(run_experiment(config), ValidationError);
  }
  SUBCASE("missing input file is a data error") {
    config.dataset_path = dir.file("nope.csv");
    CHECK_THROWS_AS(run_experiment(config), DataError);
  }
}

TEST_CASE("failed runs clean up partial outputs") {
  TempDir dir;
  write_two_objective_fixture(dir.file("data.csv"));
  ExperimentConfig config = two_objective_config(dir, dir.file("out"));
  config.algorithms = {"selectqa", "nosuch"};
  CHECK_THROWS_AS(run_experiment(config), ValidationError);
  CHECK(!std::filesystem::exists(dir.file("out/solutions.txt")));
  CHECK(!std::filesystem::exists(dir.file("out/frontier.txt")));
}
