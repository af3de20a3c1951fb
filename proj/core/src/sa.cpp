#include "tsopt/sa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tsopt/errors.hpp"
#include "tsopt/rng.hpp"

namespace tsopt {

namespace {

using Neighbors = std::vector<std::vector<std::pair<int, double>>>;

Neighbors build_neighbors(const QuboModel& model) {
  Neighbors nb(model.num_vars);
  for (const QuboTerm& t : model.quadratic) {
    nb[t.i].emplace_back(t.j, t.value);
    nb[t.j].emplace_back(t.i, t.value);
  }
  return nb;
}

/// Effective fields: h[i] = linear[i] + sum_j quad(i,j)*x_j, so the
/// energy change of flipping i is +h[i] (0 -> 1) or -h[i] (1 -> 0).
std::vector<double> build_fields(const QuboModel& model, const Neighbors& nb,
                                 const std::vector<std::uint8_t>& x) {
  std::vector<double> h(model.linear);
  for (int i = 0; i < model.num_vars; ++i)
    for (const auto& [j, q] : nb[i])
      if (x[j]) h[i] += q;
  return h;
}

void apply_flip(int i, std::vector<std::uint8_t>& x, std::vector<double>& h,
                const Neighbors& nb) {
  x[i] ^= 1;
  const double direction = x[i] ? 1.0 : -1.0;
  for (const auto& [j, q] : nb[i]) h[j] += direction * q;
}

std::pair<double, double> resolve_betas(const QuboModel& model, const AnnealConfig& config) {
  // The largest possible |dE| of a single flip bounds the schedule:
  // accept the worst uphill move with p ~ 1/2 initially, ~ 1e-4 finally.
  std::vector<double> reach(model.num_vars, 0.0);
  for (int i = 0; i < model.num_vars; ++i) reach[i] = std::fabs(model.linear[i]);
  for (const QuboTerm& t : model.quadratic) {
    reach[t.i] += std::fabs(t.value);
    reach[t.j] += std::fabs(t.value);
  }
  double max_swing = 0.0;
  for (double r : reach) max_swing = std::max(max_swing, r);
  if (max_swing <= 0.0) max_swing = 1.0;

  const double b0 = config.beta_initial ? *config.beta_initial : std::log(2.0) / max_swing;
  const double b1 = config.beta_final ? *config.beta_final : std::log(1e4) / max_swing;
  if (!(b0 > 0.0) || !(b1 >= b0))
    throw ValidationError("inverse temperatures must satisfy 0 < beta_initial <= beta_final");
  return {b0, b1};
}

SampleSet collect(std::vector<Sample> raw) {
  std::sort(raw.begin(), raw.end(), [](const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.assignment < b.assignment;
  });
  SampleSet set;
  for (Sample& s : raw) {
    if (!set.samples.empty() && set.samples.back().assignment == s.assignment)
      set.samples.back().num_occurrences += s.num_occurrences;
    else
      set.samples.push_back(std::move(s));
  }
  return set;
}

}  // namespace

const Sample& SampleSet::best() const {
  if (samples.empty()) throw Error("sample set is empty");
  return samples.front();
}

SampleSet solve_sa(const QuboModel& model, const AnnealConfig& config) {
  if (config.num_reads < 1) throw ValidationError("num_reads must be >= 1");
  if (config.sweeps < 1) throw ValidationError("sweeps must be >= 1");
  if (model.num_vars == 0) {
    SampleSet set;
    set.samples.push_back({{}, model.offset, config.num_reads});
    return set;
  }

  const auto [beta0, beta1] = resolve_betas(model, config);
  const Neighbors nb = build_neighbors(model);
  const int n = model.num_vars;

  std::vector<Sample> raw;
  raw.reserve(config.num_reads);
  for (int read = 0; read < config.num_reads; ++read) {
    SplitMix64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(read)));

    std::vector<std::uint8_t> x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>(rng() & 1u);
    std::vector<double> h = build_fields(model, nb, x);
    double e = energy(model, x);
    std::vector<std::uint8_t> best_x = x;
    double best_e = e;

    const double ratio = beta1 / beta0;
    for (int sweep = 0; sweep < config.sweeps; ++sweep) {
      const double frac =
          config.sweeps > 1 ? static_cast<double>(sweep) / (config.sweeps - 1) : 1.0;
      const double beta = beta0 * std::pow(ratio, frac);
      for (int i = 0; i < n; ++i) {
        const double de = x[i] ? -h[i] : h[i];
        if (de <= 0.0 || rng.canonical() < std::exp(-beta * de)) {
          apply_flip(i, x, h, nb);
          e += de;
          if (e < best_e) {
            best_e = e;
            best_x = x;
          }
        }
      }
    }
    // Re-evaluate exactly: the incremental energy accumulates rounding.
    raw.push_back({best_x, energy(model, best_x), 1});
  }
  return collect(std::move(raw));
}

SampleSet solve_exact(const QuboModel& model) {
  constexpr int kMaxVars = 24;
  if (model.num_vars > kMaxVars)
    throw ValidationError("exact enumeration is limited to " + std::to_string(kMaxVars) +
                          " variables, got " + std::to_string(model.num_vars));
  const int n = model.num_vars;
  if (n == 0) {
    SampleSet set;
    set.samples.push_back({{}, model.offset, 1});
    return set;
  }

  const Neighbors nb = build_neighbors(model);
  std::vector<std::uint8_t> x(n, 0);
  std::vector<double> h(model.linear);
  double e = model.offset;

  // Collect states within a slack band of the running minimum; the band
  // absorbs incremental rounding, and candidates are re-evaluated
  // exactly afterwards.
  constexpr double kBand = 1e-9;
  double min_e = e;
  std::vector<std::pair<std::uint32_t, double>> candidates{{0u, e}};
  std::uint32_t state = 0;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int bit = std::countr_zero(t);
    const double de = x[bit] ? -h[bit] : h[bit];
    apply_flip(bit, x, h, nb);
    e += de;
    state ^= (std::uint32_t{1} << bit);
    if (e <= min_e + kBand) {
      min_e = std::min(min_e, e);
      candidates.emplace_back(state, e);
      if (candidates.size() > (std::uint64_t{1} << 22)) {
        std::erase_if(candidates,
                      [&](const auto& c) { return c.second > min_e + kBand; });
      }
    }
  }

  // Exact re-evaluation of the surviving candidates.
  std::vector<Sample> raw;
  double exact_min = 0.0;
  bool have_min = false;
  for (const auto& [s, running_e] : candidates) {
    if (running_e > min_e + kBand) continue;
    std::vector<std::uint8_t> bits(n);
    for (int i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((s >> i) & 1u);
    const double exact_e = energy(model, bits);
    if (!have_min || exact_e < exact_min) {
      exact_min = exact_e;
      have_min = true;
    }
    raw.push_back({std::move(bits), exact_e, 1});
  }
  const double tie_tol = 1e-12 * std::max(1.0, std::fabs(exact_min));
  std::erase_if(raw, [&](const Sample& s) { return s.energy > exact_min + tie_tol; });
  return collect(std::move(raw));
}

}  // namespace tsopt
