#include "tsopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tsopt/errors.hpp"
#include "tsopt/text.hpp"

namespace tsopt {

namespace {

double u_statistic(const std::vector<double>& x, const std::vector<double>& y) {
  double u = 0.0;
  for (double xi : x)
    for (double yj : y) {
      if (xi > yj)
        u += 1.0;
      else if (xi == yj)
        u += 0.5;
    }
  return u;
}

bool has_ties(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  std::sort(pooled.begin(), pooled.end());
  return std::adjacent_find(pooled.begin(), pooled.end()) != pooled.end();
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Exact null distribution of U via the classic rank-sum subset count:
/// ways[k][s] = number of k-subsets of ranks {1..N} with rank sum s.
double exact_p(const std::vector<double>& x, const std::vector<double>& y,
               Alternative alternative, double u_obs) {
  const int n1 = static_cast<int>(x.size());
  const int n2 = static_cast<int>(y.size());
  const int total = n1 + n2;
  const int max_sum = total * (total + 1) / 2;
  std::vector<std::vector<double>> ways(
      n1 + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
  ways[0][0] = 1.0;
  for (int rank = 1; rank <= total; ++rank)
    for (int k = std::min(rank, n1); k >= 1; --k)
      for (int s = max_sum; s >= rank; --s)
        if (ways[k - 1][s - rank] > 0.0) ways[k][s] += ways[k - 1][s - rank];

  const int u_shift = n1 * (n1 + 1) / 2;  // U = rank sum of x - shift
  double arrangements = 0.0;
  std::vector<double> u_count(static_cast<std::size_t>(n1 * n2) + 1, 0.0);
  for (int s = u_shift; s <= max_sum; ++s) {
    const int u = s - u_shift;
    if (u > n1 * n2) break;
    u_count[u] = ways[n1][s];
    arrangements += ways[n1][s];
  }

  double p_ge = 0.0, p_le = 0.0;
  for (int u = 0; u <= n1 * n2; ++u) {
    if (u >= u_obs - 1e-12) p_ge += u_count[u];
    if (u <= u_obs + 1e-12) p_le += u_count[u];
  }
  p_ge /= arrangements;
  p_le /= arrangements;
  switch (alternative) {
    case Alternative::Greater: return p_ge;
    case Alternative::Less: return p_le;
    case Alternative::TwoSided: return std::min(1.0, 2.0 * std::min(p_ge, p_le));
  }
  throw Error("unreachable alternative");
}

/// Normal approximation with tie correction and 0.5 continuity
/// correction.  Degenerate pooled samples (zero variance) carry no
/// evidence and return p = 1.
double normal_p(const std::vector<double>& x, const std::vector<double>& y,
                Alternative alternative, double u_obs) {
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double total = n1 + n2;

  std::map<double, int> tie_groups;
  for (double v : x) ++tie_groups[v];
  for (double v : y) ++tie_groups[v];
  double tie_term = 0.0;
  for (const auto& [value, t] : tie_groups)
    tie_term += static_cast<double>(t) * t * t - t;

  const double mean = n1 * n2 / 2.0;
  double variance = n1 * n2 / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (variance <= 0.0) return 1.0;
  const double sigma = std::sqrt(variance);

  const double p_ge = 1.0 - normal_cdf((u_obs - mean - 0.5) / sigma);
  const double p_le = normal_cdf((u_obs - mean + 0.5) / sigma);
  switch (alternative) {
    case Alternative::Greater: return p_ge;
    case Alternative::Less: return p_le;
    case Alternative::TwoSided: return std::min(1.0, 2.0 * std::min(p_ge, p_le));
  }
  throw Error("unreachable alternative");
}

}  // namespace

std::string to_string(Magnitude magnitude) {
  switch (magnitude) {
    case Magnitude::Negligible: return "negligible";
    case Magnitude::Small: return "small";
    case Magnitude::Medium: return "medium";
    case Magnitude::Large: return "large";
  }
  throw Error("unreachable magnitude");
}

double mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y,
                      Alternative alternative, UMethod method) {
  if (x.empty() || y.empty())
    throw ValidationError("Mann-Whitney U test needs two nonempty samples");
  const double u_obs = u_statistic(x, y);
  const bool tied = has_ties(x, y);
  if (method == UMethod::Exact && tied)
    throw ValidationError("exact Mann-Whitney p-values are undefined with ties");
  const bool exact =
      method == UMethod::Exact || (method == UMethod::Auto && x.size() + y.size() <= 16 && !tied);
  return exact ? exact_p(x, y, alternative, u_obs) : normal_p(x, y, alternative, u_obs);
}

double vargha_delaney_a12(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty())
    throw ValidationError("A12 needs two nonempty samples");
  return u_statistic(x, y) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

Magnitude classify_magnitude(double a12) {
  if (a12 < 0.0 || a12 > 1.0)
    throw ValidationError("A12 must lie in [0, 1], got " + format_g(a12));
  if (a12 <= 0.29 || a12 >= 0.71) return Magnitude::Large;
  if (a12 <= 0.34 || a12 >= 0.64) return Magnitude::Medium;
  if (a12 <= 0.44 || a12 >= 0.56) return Magnitude::Small;
  return Magnitude::Negligible;
}

StatReport make_stat_report(const std::string& hypothesis, const std::vector<double>& x,
                            const std::vector<double>& y, Alternative alternative) {
  StatReport report;
  report.hypothesis = hypothesis;
  report.p_value = mann_whitney_u(x, y, alternative);
  report.a12 = vargha_delaney_a12(x, y);
  report.magnitude = classify_magnitude(report.a12);
  report.significant = report.p_value < 0.05;
  return report;
}

std::string format_stat_reports(const std::vector<StatReport>& reports) {
  std::string out;
  for (const StatReport& r : reports) {
    out += r.hypothesis;
    out += ',';
    out += format_g(r.p_value, 12);
    out += ',';
    out += format_g(r.a12, 12);
    out += ',';
    out += to_string(r.magnitude);
    out += '\n';
  }
  return out;
}

void save_stat_reports(const std::vector<StatReport>& reports, const std::string& path) {
  write_file(path, format_stat_reports(reports));
}

}  // namespace tsopt
