#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tsopt/errors.hpp"
#include "tsopt/pareto.hpp"
#include "tsopt/rng.hpp"
#include "tsopt/text.hpp"

using namespace tsopt;
using test_util::TempDir;

namespace {

SelectionSolution member(std::vector<double> objectives, std::string algorithm = "x",
                         int run = 0) {
  SelectionSolution s;
  s.objectives = std::move(objectives);
  s.provenance.push_back({std::move(algorithm), run});
  return s;
}

ParetoArchive archive3(std::vector<SelectionSolution> members) {
  ParetoArchive a;
  a.senses = senses3();
  a.members = std::move(members);
  return a;
}

std::vector<std::vector<double>> objective_vectors(const ParetoArchive& a) {
  std::vector<std::vector<double>> out;
  for (const auto& m : a.members) out.push_back(m.objectives);
  return out;
}

// Random mixed-scale objective vector: continuous cost, integral
// coverage counts, like the real models produce.
std::vector<double> random_vector3(SplitMix64& rng) {
  return {rng.canonical() * 4.0, static_cast<double>(rng.below(6)),
          static_cast<double>(rng.below(4))};
}

}  // namespace

TEST_CASE("dominance is strict somewhere, no worse anywhere") {
  const std::vector<Sense> senses = senses3();
  CHECK(!dominates({1, 5, 2}, {1, 5, 2}, senses));  // equal vectors never dominate
  CHECK(dominates({1, 5, 2}, {2, 5, 2}, senses));   // cheaper, same coverage
  CHECK(dominates({1, 5, 2}, {1, 4, 2}, senses));   // same cost, more coverage
  CHECK(!dominates({2, 5, 2}, {1, 5, 2}, senses));
  CHECK(!dominates({1, 4, 2}, {2, 5, 2}, senses));  // trade-off: incomparable
  CHECK(!dominates({2, 5, 2}, {1, 4, 2}, senses));
  CHECK_THROWS_AS(dominates({1, 2}, {1, 2, 3}, senses), ValidationError);
}

TEST_CASE("objective equality uses a small absolute tolerance") {
  CHECK(objectives_equal({1.0, 5.0}, {1.0 + 1e-12, 5.0}));
  CHECK(!objectives_equal({1.0, 5.0}, {1.0 + 1e-6, 5.0}));
  CHECK(!objectives_equal({1.0}, {1.0, 5.0}));
}

TEST_CASE("non-dominated filter basics") {
  SUBCASE("single member survives") {
    const ParetoArchive out = non_dominated_filter(archive3({member({1, 2, 0})}));
    REQUIRE(out.members.size() == 1);
    CHECK(out.members[0].objectives == std::vector<double>{1, 2, 0});
  }
  SUBCASE("dominated member is removed") {
    const ParetoArchive out =
        non_dominated_filter(archive3({member({2, 5, 1}), member({1, 5, 1})}));
    REQUIRE(out.members.size() == 1);
    CHECK(out.members[0].objectives == std::vector<double>{1, 5, 1});
  }
  SUBCASE("duplicates collapse and keep every provenance") {
    const ParetoArchive out = non_dominated_filter(archive3(
        {member({1, 5, 1}, "selectqa", 0), member({1, 5, 1}, "greedy", 3), member({3, 5, 1})}));
    REQUIRE(out.members.size() == 1);
    REQUIRE(out.members[0].provenance.size() == 2);
    CHECK(out.members[0].provenance[0].algorithm == "selectqa");
    CHECK(out.members[0].provenance[1].algorithm == "greedy");
    CHECK(out.members[0].provenance[1].run == 3);
  }
  SUBCASE("filter is idempotent") {
    SplitMix64 rng(3);
    std::vector<SelectionSolution> members;
    for (int i = 0; i < 30; ++i) members.push_back(member(random_vector3(rng)));
    const ParetoArchive once = non_dominated_filter(archive3(members));
    const ParetoArchive twice = non_dominated_filter(once);
    CHECK(objective_vectors(once) == objective_vectors(twice));
  }
}

TEST_CASE("reference frontier merges archives") {
  SUBCASE("one archive filters to itself when already non-dominated") {
    const ParetoArchive in = archive3({member({1, 1, 0}), member({2, 2, 0})});
    const ParetoArchive out = reference_frontier({in});
    CHECK(objective_vectors(out) == objective_vectors(in));
  }
  SUBCASE("an archive dominated by another vanishes") {
    const ParetoArchive winners = archive3({member({1, 5, 2}, "a")});
    const ParetoArchive losers = archive3({member({2, 4, 1}, "b"), member({3, 5, 2}, "b")});
    const ParetoArchive out = reference_frontier({winners, losers});
    REQUIRE(out.members.size() == 1);
    CHECK(out.members[0].provenance[0].algorithm == "a");
  }
  SUBCASE("sense mismatch is rejected") {
    ParetoArchive two;
    two.senses = senses2();
    two.members = {member({1, 1})};
    CHECK_THROWS_AS(reference_frontier({archive3({member({1, 1, 0})}), two}), ValidationError);
  }
}

TEST_CASE("reference frontier matches a direct quadratic filter") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int archives = 1 + static_cast<int>(rng.below(4));
    std::vector<ParetoArchive> input;
    std::vector<std::vector<double>> all;
    for (int a = 0; a < archives; ++a) {
      ParetoArchive arch;
      arch.senses = senses3();
      const int count = 1 + static_cast<int>(rng.below(15));
      for (int i = 0; i < count; ++i) {
        arch.members.push_back(member(random_vector3(rng), "alg" + std::to_string(a), i));
        all.push_back(arch.members.back().objectives);
      }
      input.push_back(std::move(arch));
    }
    const ParetoArchive merged = reference_frontier(input);
    // The oracle keeps duplicates; the library collapses them.  Compare
    // the distinct vector sets.
    const auto oracle = test_util::oracle_nondominated(all, senses3());
    const std::set<std::vector<double>> expected(oracle.begin(), oracle.end());
    const auto got_vectors = objective_vectors(merged);
    const std::set<std::vector<double>> got(got_vectors.begin(), got_vectors.end());
    CHECK(got == expected);
    CHECK(got_vectors.size() == got.size());  // no duplicate members
  }
}

TEST_CASE("reference frontier is order independent") {
  SplitMix64 rng(55);
  std::vector<ParetoArchive> input;
  for (int a = 0; a < 3; ++a) {
    ParetoArchive arch;
    arch.senses = senses3();
    for (int i = 0; i < 10; ++i) arch.members.push_back(member(random_vector3(rng)));
    input.push_back(std::move(arch));
  }
  const ParetoArchive forward = reference_frontier(input);
  std::reverse(input.begin(), input.end());
  for (auto& arch : input) std::reverse(arch.members.begin(), arch.members.end());
  const ParetoArchive backward = reference_frontier(input);
  auto fv = objective_vectors(forward);
  auto bv = objective_vectors(backward);
  std::sort(fv.begin(), fv.end());
  std::sort(bv.begin(), bv.end());
  CHECK(fv == bv);
}

TEST_CASE("non-dominated count against a reference") {
  const ParetoArchive reference =
      archive3({member({1, 5, 2}), member({2, 6, 2}), member({4, 7, 3})});
  SUBCASE("a subset of the reference counts fully") {
    const ParetoArchive run = archive3({member({1, 5, 2}), member({4, 7, 3})});
    CHECK(count_nondominated(run, reference) == 2);
  }
  SUBCASE("strictly dominated members do not count") {
    const ParetoArchive run = archive3({member({3, 5, 2}), member({2, 5, 2})});
    CHECK(count_nondominated(run, reference) == 0);
  }
  SUBCASE("an incomparable newcomer counts") {
    const ParetoArchive run = archive3({member({0.5, 4, 0})});  // cheaper than everything
    CHECK(count_nondominated(run, reference) == 1);
  }
  SUBCASE("count never exceeds the run frontier size") {
    SplitMix64 rng(77);
    for (int t = 0; t < 50; ++t) {
      ParetoArchive run;
      run.senses = senses3();
      const int count = 1 + static_cast<int>(rng.below(10));
      for (int i = 0; i < count; ++i) run.members.push_back(member(random_vector3(rng)));
      const int nd = count_nondominated(run, reference);
      CHECK(nd >= 0);
      CHECK(nd <= count);
    }
  }
}

TEST_CASE("study-scale bookkeeping: 567 candidates, 205 survivors") {
  // 205 mutually incomparable members that the reference keeps, plus 362
  // members strictly dominated by one strong reference point.
  ParetoArchive run;
  run.senses = senses3();
  for (int i = 0; i < 205; ++i)
    run.members.push_back(member({10.0 + i, 1000.0 + i, 5}, "selectqa", 0));
  for (int i = 0; i < 362; ++i)
    run.members.push_back(member({500.0 + i, 10.0, 0}, "selectqa", 0));
  REQUIRE(run.members.size() == 567);

  ParetoArchive reference;
  reference.senses = senses3();
  for (int i = 0; i < 205; ++i)
    reference.members.push_back(member({10.0 + i, 1000.0 + i, 5}, "ref", 0));
  // Dominates the 362 (cheaper, wider, same faults) but not the 205
  // (coverage 999 stays below their 1000+).
  reference.members.push_back(member({0.5, 999.0, 0}, "ref", 0));

  CHECK(count_nondominated(run, reference) == 205);
}

TEST_CASE("frontier file round-trip") {
  TempDir dir;
  ParetoArchive archive;
  archive.senses = senses3();
  archive.members.push_back(member({1.5, 12, 3}, "selectqa", 2));
  SelectionSolution multi = member({2.25, 14, 3}, "selectqa", 0);
  multi.provenance.push_back({"greedy", 7});
  archive.members.push_back(multi);

  save_frontier_file(archive, dir.file("f.txt"));
  const ParetoArchive back = load_frontier_file(dir.file("f.txt"), senses3());
  // One line per (member, provenance): the duplicate-vector member comes
  // back as two single-provenance members.
  REQUIRE(back.members.size() == 3);
  CHECK(back.members[0].objectives == std::vector<double>{1.5, 12, 3});
  CHECK(back.members[0].provenance[0].algorithm == "selectqa");
  CHECK(back.members[0].provenance[0].run == 2);
  CHECK(back.members[1].objectives == std::vector<double>{2.25, 14, 3});
  CHECK(back.members[2].provenance[0].algorithm == "greedy");
  CHECK(back.members[2].provenance[0].run == 7);

  SUBCASE("wrong dimensionality is rejected") {
    CHECK_THROWS_AS(load_frontier_file(dir.file("f.txt"), senses2()), DataError);
  }
  SUBCASE("malformed lines carry their line number") {
    write_file(dir.file("bad.txt"), "selectqa 0 1.0 2 3\nselectqa nope 1.0 2 3\n");
    try {
      load_frontier_file(dir.file("bad.txt"), senses3());
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }
}
