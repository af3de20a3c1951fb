#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsopt/test_suite.hpp"

namespace tsopt {

/// One quadratic coefficient, with i < j (squares are folded into the
/// linear part via x^2 = x).
struct QuboTerm {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

/// A quadratic unconstrained binary optimization model:
///   energy(x) = offset + sum_i linear[i]*x_i + sum_{i<j} quad(i,j)*x_i*x_j.
/// `alpha` and `penalty` record how the model was built; they do not
/// enter energy evaluation.
struct QuboModel {
  int num_vars = 0;
  std::vector<double> linear;      ///< size num_vars
  std::vector<QuboTerm> quadratic; ///< sorted by (i, j), unique pairs
  double offset = 0.0;
  double alpha = 0.5;
  double penalty = 0.0;
};

/// Objective values of a selection under the three-objective model.
struct ObjectiveVector3 {
  double total_cost = 0.0;     ///< sum of selected normalized costs
  int statement_coverage = 0;  ///< distinct statements covered
  int fault_coverage = 0;      ///< sum of e_i over selected cases
};

/// Objective values under the two-objective model.
struct ObjectiveVector2 {
  double total_cost = 0.0;
  double total_failure_rate = 0.0;
};

/// Builds the three-objective model
///   H = alpha*sum_i cost_i*x_i - (1-alpha)*sum_i e_i*x_i
///       + P*sum_k (sum_{i in T_k} x_i - 1)^2
/// in expanded form: each statement k contributes -P to the linear term
/// of every covering case, +2P to every unordered covering pair, and +P
/// to the offset.  The offset is kept so energies equal the exact
/// penalty form.  When `penalty` is not given it defaults to
/// penalty_upper_bound().  Throws ValidationError for alpha outside
/// (0, 1) or a non-positive penalty override.
QuboModel build_three_objective_qubo(const TestSuite& suite, const NormalizedCosts& costs,
                                     double alpha, std::optional<double> penalty = std::nullopt);

/// Builds the separable two-objective model
///   H = alpha*sum_i cost_i*x_i - (1-alpha)*sum_i f_i*x_i.
QuboModel build_two_objective_qubo(const TestSuite& suite, const NormalizedCosts& costs,
                                   double alpha);

/// P = alpha*sum(cost) + (1-alpha)*sum(e) + 1: strictly larger than the
/// widest possible swing of the unpenalized objective, so any constraint
/// violation costs more than it can ever save.
double penalty_upper_bound(const TestSuite& suite, const NormalizedCosts& costs, double alpha);

/// Evaluates the model energy for a full binary assignment.  Pure;
/// throws ValidationError on a length mismatch.
double energy(const QuboModel& model, const std::vector<std::uint8_t>& assignment);

ObjectiveVector3 evaluate_objectives3(const TestSuite& suite, const NormalizedCosts& costs,
                                      const std::vector<std::uint8_t>& assignment);
ObjectiveVector2 evaluate_objectives2(const TestSuite& suite, const NormalizedCosts& costs,
                                      const std::vector<std::uint8_t>& assignment);

/// Text interchange format, one term per line:
///   offset <v>
///   lin <i> <v>      (every variable, zeros included)
///   quad <i> <j> <v>
/// alpha/penalty are build metadata and are not part of the format.
void save_qubo(const QuboModel& model, const std::string& path);
QuboModel load_qubo(const std::string& path);

}  // namespace tsopt
