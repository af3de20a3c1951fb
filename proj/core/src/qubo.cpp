#include "tsopt/qubo.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "tsopt/errors.hpp"
#include "tsopt/text.hpp"

namespace tsopt {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("alpha must lie strictly between 0 and 1, got " + format_g(alpha));
}

void check_length(std::size_t got, int want) {
  if (got != static_cast<std::size_t>(want))
    throw ValidationError("assignment length " + std::to_string(got) +
                          " does not match the number of variables " + std::to_string(want));
}

}  // namespace

double penalty_upper_bound(const TestSuite& suite, const NormalizedCosts& costs, double alpha) {
  check_alpha(alpha);
  double cost_sum = 0.0;
  double fault_sum = 0.0;
  for (std::size_t i = 0; i < suite.cases.size(); ++i) {
    cost_sum += costs.values[i];
    fault_sum += suite.cases[i].fault_flag;
  }
  return alpha * cost_sum + (1.0 - alpha) * fault_sum + 1.0;
}

QuboModel build_three_objective_qubo(const TestSuite& suite, const NormalizedCosts& costs,
                                     double alpha, std::optional<double> penalty) {
  check_alpha(alpha);
  if (costs.values.size() != suite.cases.size())
    throw ValidationError("normalized costs do not match the suite size");
  if (penalty && !(*penalty > 0.0))
    throw ValidationError("penalty must be positive, got " + format_g(*penalty));
  const double p = penalty ? *penalty : penalty_upper_bound(suite, costs, alpha);

  QuboModel model;
  model.num_vars = suite.num_cases();
  model.alpha = alpha;
  model.penalty = p;
  model.linear.assign(model.num_vars, 0.0);
  for (int i = 0; i < model.num_vars; ++i)
    model.linear[i] = alpha * costs.values[i] - (1.0 - alpha) * suite.cases[i].fault_flag;

  // Expand P*(sum_{i in T_k} x_i - 1)^2 per statement k under x^2 = x:
  // -P per covering case, +2P per unordered covering pair, +P constant.
  std::unordered_map<std::uint64_t, double> quad;
  for (const auto& [k, covering] : suite.coverage_index) {
    model.offset += p;
    for (std::size_t a = 0; a < covering.size(); ++a) {
      model.linear[covering[a]] -= p;
      for (std::size_t b = a + 1; b < covering.size(); ++b) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(covering[a]) << 32) | static_cast<std::uint32_t>(covering[b]);
        quad[key] += 2.0 * p;
      }
    }
  }
  model.quadratic.reserve(quad.size());
  for (const auto& [key, value] : quad)
    model.quadratic.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), value});
  std::sort(model.quadratic.begin(), model.quadratic.end(),
            [](const QuboTerm& a, const QuboTerm& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  return model;
}

QuboModel build_two_objective_qubo(const TestSuite& suite, const NormalizedCosts& costs,
                                   double alpha) {
  check_alpha(alpha);
  if (costs.values.size() != suite.cases.size())
    throw ValidationError("normalized costs do not match the suite size");
  QuboModel model;
  model.num_vars = suite.num_cases();
  model.alpha = alpha;
  model.linear.assign(model.num_vars, 0.0);
  for (int i = 0; i < model.num_vars; ++i)
    model.linear[i] = alpha * costs.values[i] - (1.0 - alpha) * suite.cases[i].failure_rate;
  return model;
}

double energy(const QuboModel& model, const std::vector<std::uint8_t>& assignment) {
  check_length(assignment.size(), model.num_vars);
  double e = model.offset;
  for (int i = 0; i < model.num_vars; ++i)
    if (assignment[i]) e += model.linear[i];
  for (const QuboTerm& t : model.quadratic)
    if (assignment[t.i] && assignment[t.j]) e += t.value;
  return e;
}

ObjectiveVector3 evaluate_objectives3(const TestSuite& suite, const NormalizedCosts& costs,
                                      const std::vector<std::uint8_t>& assignment) {
  check_length(assignment.size(), suite.num_cases());
  ObjectiveVector3 obj;
  std::vector<std::uint8_t> covered(suite.statement_universe.size(), 0);
  // Statement ids are arbitrary ints; map them to dense positions once.
  std::map<int, int> position;
  for (std::size_t s = 0; s < suite.statement_universe.size(); ++s)
    position[suite.statement_universe[s]] = static_cast<int>(s);
  for (int i = 0; i < suite.num_cases(); ++i) {
    if (!assignment[i]) continue;
    obj.total_cost += costs.values[i];
    obj.fault_coverage += suite.cases[i].fault_flag;
    for (int k : suite.cases[i].covered_statements) covered[position[k]] = 1;
  }
  for (std::uint8_t c : covered) obj.statement_coverage += c;
  return obj;
}

ObjectiveVector2 evaluate_objectives2(const TestSuite& suite, const NormalizedCosts& costs,
                                      const std::vector<std::uint8_t>& assignment) {
  check_length(assignment.size(), suite.num_cases());
  ObjectiveVector2 obj;
  for (int i = 0; i < suite.num_cases(); ++i) {
    if (!assignment[i]) continue;
    obj.total_cost += costs.values[i];
    obj.total_failure_rate += suite.cases[i].failure_rate;
  }
  return obj;
}

void save_qubo(const QuboModel& model, const std::string& path) {
  std::ostringstream out;
  out << "offset " << format_g(model.offset) << "\n";
  for (int i = 0; i < model.num_vars; ++i)
    out << "lin " << i << " " << format_g(model.linear[i]) << "\n";
  for (const QuboTerm& t : model.quadratic)
    out << "quad " << t.i << " " << t.j << " " << format_g(t.value) << "\n";
  write_file(path, out.str());
}

QuboModel load_qubo(const std::string& path) {
  QuboModel model;
  std::unordered_map<std::uint64_t, double> quad;
  const std::vector<std::string> lines = split(read_file(path), '\n');
  std::vector<std::pair<int, double>> linear;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = trim(lines[ln]);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(ln + 1);
    const std::vector<std::string> tok = split_ws(line);
    if (tok[0] == "offset" && tok.size() == 2) {
      model.offset = parse_double(tok[1], where);
    } else if (tok[0] == "lin" && tok.size() == 3) {
      linear.emplace_back(static_cast<int>(parse_long(tok[1], where)),
                          parse_double(tok[2], where));
    } else if (tok[0] == "quad" && tok.size() == 4) {
      int i = static_cast<int>(parse_long(tok[1], where));
      int j = static_cast<int>(parse_long(tok[2], where));
      if (i == j) throw DataError(where + ": quadratic term with i = j");
      if (i > j) std::swap(i, j);
      quad[(static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j)] +=
          parse_double(tok[3], where);
    } else {
      throw DataError(where + ": expected 'offset <v>', 'lin <i> <v>' or 'quad <i> <j> <v>'");
    }
  }
  int max_var = -1;
  for (const auto& [i, v] : linear) {
    if (i < 0) throw DataError(path + ": negative variable index");
    max_var = std::max(max_var, i);
  }
  for (const auto& [key, v] : quad)
    max_var = std::max(max_var, static_cast<int>(key & 0xffffffffu));
  model.num_vars = max_var + 1;
  model.linear.assign(model.num_vars, 0.0);
  for (const auto& [i, v] : linear) model.linear[i] += v;
  model.quadratic.reserve(quad.size());
  for (const auto& [key, value] : quad)
    model.quadratic.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), value});
  std::sort(model.quadratic.begin(), model.quadratic.end(),
            [](const QuboTerm& a, const QuboTerm& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  return model;
}

}  // namespace tsopt
