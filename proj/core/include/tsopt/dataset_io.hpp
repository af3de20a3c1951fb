#pragma once

#include <string>

#include "tsopt/test_suite.hpp"

namespace tsopt {

/// Loads the three-objective (coverage + cost + fault) dataset:
///   - coverage file: one line per case, `<test_id>: <s1> <s2> ...`
///     (statement list may be empty);
///   - cost file: `test_id,raw_cost`, one row per case, every case
///     present exactly once;
///   - fault file: `test_id,fault_id` rows; e_i = 1 iff test_id appears.
/// Case order (and thus the 0-based index) is the order of first
/// appearance in the coverage file.  Throws DataError with `file:line`
/// context on malformed rows, and on ids that are unknown to the
/// coverage file or missing from the cost file.
TestSuite load_three_objective_dataset(const std::string& coverage_path,
                                       const std::string& cost_path,
                                       const std::string& fault_path);

/// Loads the two-objective (time + failure-rate) CSV.  Header is
/// `id,time,rate` optionally followed by `rate_unit=percent` or
/// `rate_unit=fraction` (default fraction).  Rates are stored as
/// fractions.  With drop_zero_rate, rows whose rate is 0 are removed.
/// Negative times or out-of-range rates raise ValidationError; malformed
/// rows raise DataError with `file:line` context.
TestSuite load_two_objective_dataset(const std::string& csv_path, bool drop_zero_rate);

/// Inverse of the loaders, used for interchange and round-trip checks.
/// Test ids are written as the 0-based case index.
void save_three_objective_dataset(const TestSuite& suite,
                                  const std::string& coverage_path,
                                  const std::string& cost_path,
                                  const std::string& fault_path);
void save_two_objective_dataset(const TestSuite& suite, const std::string& csv_path);

}  // namespace tsopt
