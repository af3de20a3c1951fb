#pragma once

#include <string>
#include <vector>

namespace tsopt {

enum class Alternative { Greater, Less, TwoSided };

/// How to compute the Mann-Whitney p-value.  Auto picks the exact
/// distribution for small tie-free samples (combined size <= 16) and the
/// normal approximation (tie + continuity corrected) otherwise.
enum class UMethod { Auto, Exact, Normal };

enum class Magnitude { Negligible, Small, Medium, Large };

std::string to_string(Magnitude magnitude);

/// Mann-Whitney U test of x against y.  U counts pairs with x_i > y_j
/// (ties at half weight); Greater asks whether x tends to exceed y and
/// is small when it does.  Exact p-values enumerate the rank-subset
/// distribution; Exact is unavailable in the presence of ties.  Throws
/// ValidationError on empty samples.
double mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y,
                      Alternative alternative, UMethod method = UMethod::Auto);

/// Vargha-Delaney effect size:
///   (#{x_i > y_j} + 0.5 * #{x_i = y_j}) / (|x| * |y|).
double vargha_delaney_a12(const std::vector<double>& x, const std::vector<double>& y);

/// Magnitude bands over A12:
///   large      [0, 0.29] or [0.71, 1]
///   medium     (0.29, 0.34] or [0.64, 0.71)
///   small      (0.34, 0.44] or [0.56, 0.64)
///   negligible (0.44, 0.56)
/// Throws ValidationError outside [0, 1].
Magnitude classify_magnitude(double a12);

/// One hypothesis row: directional U-test p-value plus effect size.
struct StatReport {
  std::string hypothesis;
  double p_value = 1.0;
  double a12 = 0.5;
  Magnitude magnitude = Magnitude::Negligible;
  bool significant = false;  ///< p_value < 0.05
};

StatReport make_stat_report(const std::string& hypothesis, const std::vector<double>& x,
                            const std::vector<double>& y, Alternative alternative);

/// Report file: `<hypothesis>,<p_value>,<a12>,<magnitude>` per line.
std::string format_stat_reports(const std::vector<StatReport>& reports);
void save_stat_reports(const std::vector<StatReport>& reports, const std::string& path);

}  // namespace tsopt
