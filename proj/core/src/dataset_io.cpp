#include "tsopt/dataset_io.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tsopt/errors.hpp"
#include "tsopt/text.hpp"

namespace tsopt {

namespace {

std::string at(const std::string& path, std::size_t line_no) {
  return path + ":" + std::to_string(line_no);
}

/// Splits file content into lines, dropping a trailing empty line.
std::vector<std::string> lines_of(const std::string& content) {
  std::vector<std::string> lines = split(content, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

TestSuite load_three_objective_dataset(const std::string& coverage_path,
                                       const std::string& cost_path,
                                       const std::string& fault_path) {
  // Coverage file defines the case universe and the index order.
  std::vector<TestCase> cases;
  std::map<std::string, int> index_of;
  {
    const std::vector<std::string> lines = lines_of(read_file(coverage_path));
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      const std::string line = trim(lines[ln]);
      if (line.empty()) continue;
      const auto colon = line.find(':');
      if (colon == std::string::npos)
        throw DataError(at(coverage_path, ln + 1) + ": expected '<test_id>: <statements...>'");
      const std::string id = trim(line.substr(0, colon));
      if (id.empty())
        throw DataError(at(coverage_path, ln + 1) + ": empty test id");
      if (index_of.count(id))
        throw DataError(at(coverage_path, ln + 1) + ": duplicate test id '" + id + "'");
      TestCase tc;
      for (const std::string& tok : split_ws(line.substr(colon + 1)))
        tc.covered_statements.push_back(
            static_cast<int>(parse_long(tok, at(coverage_path, ln + 1))));
      index_of.emplace(id, static_cast<int>(cases.size()));
      cases.push_back(std::move(tc));
    }
  }

  // Cost file: exactly one row per known case.
  {
    std::vector<bool> seen(cases.size(), false);
    const std::vector<std::string> lines = lines_of(read_file(cost_path));
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      const std::string line = trim(lines[ln]);
      if (line.empty()) continue;
      const std::vector<std::string> fields = split(line, ',');
      if (fields.size() != 2)
        throw DataError(at(cost_path, ln + 1) + ": expected 'test_id,raw_cost'");
      const std::string id = trim(fields[0]);
      auto it = index_of.find(id);
      if (it == index_of.end())
        throw DataError(at(cost_path, ln + 1) + ": test id '" + id +
                        "' does not appear in the coverage file");
      if (seen[it->second])
        throw DataError(at(cost_path, ln + 1) + ": duplicate cost for test id '" + id + "'");
      seen[it->second] = true;
      const double cost = parse_double(fields[1], at(cost_path, ln + 1));
      if (cost < 0.0)
        throw DataError(at(cost_path, ln + 1) + ": negative cost for test id '" + id + "'");
      cases[it->second].raw_cost = cost;
    }
    for (const auto& [id, idx] : index_of)
      if (!seen[idx])
        throw DataError(cost_path + ": no cost row for test id '" + id + "'");
  }

  // Fault file: e_i = 1 iff the id appears in at least one pair.
  {
    const std::vector<std::string> lines = lines_of(read_file(fault_path));
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      const std::string line = trim(lines[ln]);
      if (line.empty()) continue;
      const std::vector<std::string> fields = split(line, ',');
      if (fields.size() != 2 || trim(fields[1]).empty())
        throw DataError(at(fault_path, ln + 1) + ": expected 'test_id,fault_id'");
      const std::string id = trim(fields[0]);
      auto it = index_of.find(id);
      if (it == index_of.end())
        throw DataError(at(fault_path, ln + 1) + ": test id '" + id +
                        "' does not appear in the coverage file");
      cases[it->second].fault_flag = 1;
    }
  }

  return TestSuite::build(std::move(cases));
}

TestSuite load_two_objective_dataset(const std::string& csv_path, bool drop_zero_rate) {
  const std::vector<std::string> lines = lines_of(read_file(csv_path));
  std::size_t ln = 0;
  while (ln < lines.size() && trim(lines[ln]).empty()) ++ln;
  if (ln == lines.size())
    throw DataError(csv_path + ": missing header 'id,time,rate[,rate_unit=...]'");

  bool percent = false;
  {
    const std::vector<std::string> fields = split(trim(lines[ln]), ',');
    const bool named_ok = fields.size() >= 3 && trim(fields[0]) == "id" &&
                          trim(fields[1]) == "time" && trim(fields[2]) == "rate";
    if (!named_ok || fields.size() > 4)
      throw DataError(at(csv_path, ln + 1) + ": header must be 'id,time,rate[,rate_unit=...]'");
    if (fields.size() == 4) {
      const std::string unit = trim(fields[3]);
      if (unit == "rate_unit=percent")
        percent = true;
      else if (unit != "rate_unit=fraction")
        throw DataError(at(csv_path, ln + 1) +
                        ": rate_unit must be 'percent' or 'fraction', got '" + unit + "'");
    }
  }
  ++ln;

  std::vector<TestCase> cases;
  std::map<std::string, bool> seen;
  for (; ln < lines.size(); ++ln) {
    const std::string line = trim(lines[ln]);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 3)
      throw DataError(at(csv_path, ln + 1) + ": expected 'id,time,rate'");
    const std::string id = trim(fields[0]);
    if (id.empty()) throw DataError(at(csv_path, ln + 1) + ": empty test id");
    if (seen[id])
      throw DataError(at(csv_path, ln + 1) + ": duplicate test id '" + id + "'");
    seen[id] = true;
    const double time = parse_double(fields[1], at(csv_path, ln + 1));
    double rate = parse_double(fields[2], at(csv_path, ln + 1));
    if (time < 0.0)
      throw ValidationError(at(csv_path, ln + 1) + ": negative time for test id '" + id + "'");
    const double rate_max = percent ? 100.0 : 1.0;
    if (rate < 0.0 || rate > rate_max)
      throw ValidationError(at(csv_path, ln + 1) + ": rate " + format_g(rate) +
                            " outside [0, " + format_g(rate_max) + "] for test id '" + id + "'");
    if (percent) rate /= 100.0;
    if (drop_zero_rate && rate == 0.0) continue;
    TestCase tc;
    tc.raw_cost = time;
    tc.failure_rate = rate;
    cases.push_back(std::move(tc));
  }
  return TestSuite::build(std::move(cases));
}

void save_three_objective_dataset(const TestSuite& suite,
                                  const std::string& coverage_path,
                                  const std::string& cost_path,
                                  const std::string& fault_path) {
  std::ostringstream coverage, costs, faults;
  for (const TestCase& tc : suite.cases) {
    coverage << tc.id << ":";
    for (int k : tc.covered_statements) coverage << " " << k;
    coverage << "\n";
    costs << tc.id << "," << format_g(tc.raw_cost) << "\n";
    if (tc.fault_flag) faults << tc.id << ",f0\n";
  }
  write_file(coverage_path, coverage.str());
  write_file(cost_path, costs.str());
  write_file(fault_path, faults.str());
}

void save_two_objective_dataset(const TestSuite& suite, const std::string& csv_path) {
  std::ostringstream out;
  out << "id,time,rate,rate_unit=fraction\n";
  for (const TestCase& tc : suite.cases)
    out << tc.id << "," << format_g(tc.raw_cost) << "," << format_g(tc.failure_rate) << "\n";
  write_file(csv_path, out.str());
}

}  // namespace tsopt
