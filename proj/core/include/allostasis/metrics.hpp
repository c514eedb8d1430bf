#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "allostasis/agent.hpp"

namespace allostasis {

inline constexpr std::size_t kFilterWindow = 50;
inline constexpr std::size_t kFilterMinOccurrences = 2;

struct RunSummary {
  std::uint64_t seed = 0;
  std::size_t steps_survived = 0;  // records with energy > 0
  double viability_pct = 0.0;
  std::array<double, kNumActions> action_pct{};  // eat, play, explore
  double median_comfort_pct = 0.0;
  double energy_comfort_pct = 0.0;
  double mean_cortisol = 0.0;
  double final_d_energy = 0.0;
};

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;  // sample standard deviation / sqrt(n); 0 for n < 2
};

/// Keeps a run only if food and friend each appeared at least twice in the
/// first 50 steps (or in the whole trace when it is shorter).
bool filter_valid_run(std::span<const StepRecord> trace, std::size_t window = kFilterWindow,
                      std::size_t min_occurrences = kFilterMinOccurrences);

/// Viability is relative to `steps_configured`; comfort, cortisol and action
/// shares are taken over alive steps. Throws EmptyTrace.
RunSummary compute_metrics(std::span<const StepRecord> trace, std::size_t steps_configured,
                           std::uint64_t seed = 0);

MeanSem mean_sem(std::span<const double> values);

/// Median; averages the middle pair for even counts. 0 for an empty span.
double median(std::span<const double> values);

}  // namespace allostasis
