#include "allostasis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "allostasis/error.hpp"

namespace allostasis {

bool filter_valid_run(std::span<const StepRecord> trace, std::size_t window,
                      std::size_t min_occurrences) {
  std::size_t food = 0;
  std::size_t friends = 0;
  for (const auto& r : trace.first(std::min(window, trace.size()))) {
    food += r.obs[Modality::Food];
    friends += r.obs[Modality::Friend];
  }
  return food >= min_occurrences && friends >= min_occurrences;
}

double median(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

MeanSem mean_sem(std::span<const double> values) {
  if (values.empty()) return {};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

RunSummary compute_metrics(std::span<const StepRecord> trace, std::size_t steps_configured,
                           std::uint64_t seed) {
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "cannot summarize an empty trace");
  if (steps_configured == 0) throw Error(ErrorCode::ConfigError, "steps must be positive");

  RunSummary s;
  s.seed = seed;
  s.final_d_energy = trace.back().d_energy;

  std::vector<double> energy_ratio;
  std::vector<double> mean_ratio;
  double cortisol_sum = 0.0;
  std::array<std::size_t, kNumActions> counts{};
  for (const auto& r : trace) {
    if (!r.alive || !(r.energy > 0.0)) continue;
    ++s.steps_survived;
    const double e = 100.0 * r.energy / r.d_energy;
    const double so = 100.0 * r.socialness / r.d_social;
    energy_ratio.push_back(e);
    mean_ratio.push_back(0.5 * (e + so));
    cortisol_sum += r.cortisol;
    ++counts[index(r.action)];
  }

  s.viability_pct = 100.0 * static_cast<double>(s.steps_survived) /
                    static_cast<double>(steps_configured);
  if (s.steps_survived > 0) {
    const double n = static_cast<double>(s.steps_survived);
    for (std::size_t a = 0; a < kNumActions; ++a) {
      s.action_pct[a] = 100.0 * static_cast<double>(counts[a]) / n;
    }
    s.energy_comfort_pct = median(energy_ratio);
    s.median_comfort_pct = median(mean_ratio);
    s.mean_cortisol = cortisol_sum / n;
  }
  return s;
}

}  // namespace allostasis
