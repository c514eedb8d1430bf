#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "allostasis/config.hpp"
#include "allostasis/metrics.hpp"

namespace allostasis {

/// Across-run mean and SEM of the reported metrics.
struct AggregateMetrics {
  MeanSem viability_pct;
  std::array<MeanSem, kNumActions> action_pct;
  MeanSem median_comfort_pct;
  MeanSem energy_comfort_pct;
  MeanSem mean_cortisol;
  MeanSem final_d_energy;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunSummary> runs;  // accepted runs, ascending seed
  std::vector<std::uint64_t> discarded_seeds;
  AggregateMetrics aggregate;
};

struct ExperimentOptions {
  bool write_files = true;
  bool include_timestamp = true;
};

AggregateMetrics aggregate(const std::vector<RunSummary>& runs);

/// Runs seeds base_seed, base_seed + 1, ... until `runs` of them pass
/// filter_valid_run. Episodes execute on `config.threads` workers; accepted
/// seeds are chosen in seed order, so the result does not depend on the
/// thread count. With write_files, the output directory receives
/// trace_<seed>.csv for each accepted run, config.txt, summary.json,
/// fig3_timeseries.csv and fig4_beliefs.csv.
/// Throws ConfigError, FilterExhausted, IoError.
ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentOptions& options = {});

/// Runs presets A-D into <output_dir>/<preset>/ and writes comparison.csv
/// and comparison.md beside them.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& config,
                                        const ExperimentOptions& options = {});

nlohmann::json to_json(const ExperimentResult& result, bool include_timestamp);
std::string comparison_table_markdown(const std::vector<ExperimentResult>& results);

}  // namespace allostasis
