#include "allostasis/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <ctime>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "allostasis/error.hpp"
#include "allostasis/trace_io.hpp"

namespace allostasis {

namespace {

namespace fs = std::filesystem;

struct Attempt {
  std::uint64_t seed = 0;
  std::vector<StepRecord> trace;
  bool valid = false;
};

void run_attempts(const ExperimentConfig& cfg, std::vector<Attempt>& batch, bool write_files) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < batch.size(); i = next++) {
      try {
        Attempt& a = batch[i];
        if (write_files) {
          TraceWriter writer(cfg.output_dir / trace_file_name(a.seed));
          a.trace = run_episode(cfg.simulation, cfg.variant, a.seed,
                                [&writer](const StepRecord& r) { writer.write(r); });
        } else {
          a.trace = run_episode(cfg.simulation, cfg.variant, a.seed);
        }
        a.valid = filter_valid_run(a.trace);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t n = std::min(cfg.threads, batch.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

void write_plot_data(const fs::path& dir, const std::vector<Attempt>& accepted) {
  auto fig3 = open_output(dir / "fig3_timeseries.csv");
  fig3 << "seed,t,series,value\n";
  for (const auto& a : accepted) {
    for (const auto& r : a.trace) {
      fmt::print(fig3, "{},{},energy,{}\n", a.seed, r.t, r.energy);
      fmt::print(fig3, "{},{},socialness,{}\n", a.seed, r.t, r.socialness);
      fmt::print(fig3, "{},{},d_energy,{}\n", a.seed, r.t, r.d_energy);
      fmt::print(fig3, "{},{},surprisal_delta,{}\n", a.seed, r.t, r.surprisal_delta);
      fmt::print(fig3, "{},{},cortisol,{}\n", a.seed, r.t, r.cortisol);
    }
  }
  // Beliefs per state; `selected` marks the behaviour tied to that state
  // (eat - hungry, play - playful, explore - satisfied).
  auto fig4 = open_output(dir / "fig4_beliefs.csv");
  fig4 << "seed,t,state,belief,selected\n";
  for (const auto& a : accepted) {
    for (const auto& r : a.trace) {
      for (std::size_t s = 0; s < kNumStates; ++s) {
        fmt::print(fig4, "{},{},{},{},{}\n", a.seed, r.t,
                   to_string(static_cast<MotivationState>(s)), r.q_s[s],
                   index(r.action) == s ? 1 : 0);
      }
    }
  }
  if (!fig3 || !fig4) throw Error(ErrorCode::IoError, "failed writing plot data in " + dir.string());
}

nlohmann::json mean_sem_json(const MeanSem& m) { return {{"mean", m.mean}, {"sem", m.sem}}; }

nlohmann::json summary_json(const RunSummary& s) {
  return {{"seed", s.seed},
          {"steps_survived", s.steps_survived},
          {"viability_pct", s.viability_pct},
          {"action_distribution_pct",
           {{"eat", s.action_pct[0]}, {"play", s.action_pct[1]}, {"explore", s.action_pct[2]}}},
          {"median_comfort_pct", s.median_comfort_pct},
          {"energy_comfort_pct", s.energy_comfort_pct},
          {"mean_cortisol", s.mean_cortisol},
          {"final_d_energy", s.final_d_energy}};
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&tt, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace

AggregateMetrics aggregate(const std::vector<RunSummary>& runs) {
  auto collect = [&](auto field) {
    std::vector<double> v;
    v.reserve(runs.size());
    for (const auto& r : runs) v.push_back(field(r));
    return mean_sem(v);
  };
  AggregateMetrics m;
  m.viability_pct = collect([](const RunSummary& r) { return r.viability_pct; });
  for (std::size_t a = 0; a < kNumActions; ++a) {
    m.action_pct[a] = collect([a](const RunSummary& r) { return r.action_pct[a]; });
  }
  m.median_comfort_pct = collect([](const RunSummary& r) { return r.median_comfort_pct; });
  m.energy_comfort_pct = collect([](const RunSummary& r) { return r.energy_comfort_pct; });
  m.mean_cortisol = collect([](const RunSummary& r) { return r.mean_cortisol; });
  m.final_d_energy = collect([](const RunSummary& r) { return r.final_d_energy; });
  return m;
}

nlohmann::json to_json(const ExperimentResult& result, bool include_timestamp) {
  std::ostringstream config_text;
  write_config(config_text, result.config);

  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : result.runs) runs.push_back(summary_json(r));

  const auto& agg = result.aggregate;
  nlohmann::json j;
  j["metadata"] = {{"generated_at", include_timestamp ? iso_timestamp() : std::string()}};
  j["variant"] = result.config.variant.name();
  j["config"] = config_text.str();
  j["runs"] = runs;
  j["aggregate"] = {
      {"viability_pct", mean_sem_json(agg.viability_pct)},
      {"action_distribution_pct",
       {{"eat", mean_sem_json(agg.action_pct[0])},
        {"play", mean_sem_json(agg.action_pct[1])},
        {"explore", mean_sem_json(agg.action_pct[2])}}},
      {"median_comfort_pct", mean_sem_json(agg.median_comfort_pct)},
      {"mean_cortisol", mean_sem_json(agg.mean_cortisol)},
      {"energy_comfort_pct", mean_sem_json(agg.energy_comfort_pct)},
      {"final_d_energy", mean_sem_json(agg.final_d_energy)},
  };
  j["discarded_seed_count"] = result.discarded_seeds.size();
  j["discarded_seeds"] = result.discarded_seeds;
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentOptions& options) {
  validate(config);
  if (options.write_files) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + config.output_dir.string());
  }

  ExperimentResult result;
  result.config = config;
  std::vector<Attempt> accepted;
  const std::size_t max_attempts = config.runs * config.max_attempt_factor;
  std::size_t attempts = 0;
  std::uint64_t next_seed = config.base_seed;

  while (accepted.size() < config.runs) {
    const std::size_t need = std::min(config.runs - accepted.size(), max_attempts - attempts);
    if (need == 0) {
      throw Error(ErrorCode::FilterExhausted,
                  fmt::format("only {} of {} runs passed the resource filter after {} seeds",
                              accepted.size(), config.runs, attempts));
    }
    std::vector<Attempt> batch(need);
    for (auto& a : batch) a.seed = next_seed++;
    attempts += need;
    run_attempts(config, batch, options.write_files);
    for (auto& a : batch) {
      if (a.valid) {
        accepted.push_back(std::move(a));
      } else {
        result.discarded_seeds.push_back(a.seed);
        if (options.write_files) fs::remove(config.output_dir / trace_file_name(a.seed));
      }
    }
  }

  for (const auto& a : accepted) {
    result.runs.push_back(compute_metrics(a.trace, config.simulation.steps, a.seed));
  }
  result.aggregate = aggregate(result.runs);

  if (options.write_files) {
    const fs::path& dir = config.output_dir;
    auto cfg_out = open_output(dir / "config.txt");
    write_config(cfg_out, config);
    auto summary = open_output(dir / "summary.json");
    summary << to_json(result, options.include_timestamp).dump(2) << '\n';
    write_plot_data(dir, accepted);
    if (!cfg_out || !summary) throw Error(ErrorCode::IoError, "failed writing " + dir.string());
  }
  return result;
}

std::string comparison_table_markdown(const std::vector<ExperimentResult>& results) {
  std::string out = "| Metric |";
  for (const auto& r : results) out += fmt::format(" Model {} |", r.config.variant.name());
  out += "\n|---|";
  for (std::size_t i = 0; i < results.size(); ++i) out += "---|";
  out += "\n| Viability (/100%) |";
  for (const auto& r : results) {
    out += fmt::format(" {:.0f}±{:.0f}% |", r.aggregate.viability_pct.mean, r.aggregate.viability_pct.sem);
  }
  out += "\n| Action Distribution % Eat/Play/Explore |";
  for (const auto& r : results) {
    const auto& a = r.aggregate.action_pct;
    out += fmt::format(" {:.0f}/{:.0f}/{:.0f}% |", a[0].mean, a[1].mean, a[2].mean);
  }
  out += "\n| Median Comfort |";
  for (const auto& r : results) {
    out += fmt::format(" {:.0f}±{:.0f}% |", r.aggregate.median_comfort_pct.mean,
                       r.aggregate.median_comfort_pct.sem);
  }
  out += "\n| Cortisol (Mean) |";
  for (const auto& r : results) {
    out += fmt::format(" {:.2f} ± {:.2f} |", r.aggregate.mean_cortisol.mean, r.aggregate.mean_cortisol.sem);
  }
  out += "\n| Discarded seeds |";
  for (const auto& r : results) out += fmt::format(" {} |", r.discarded_seeds.size());
  out += "\n";
  return out;
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& config,
                                        const ExperimentOptions& options) {
  std::vector<ExperimentResult> results;
  for (std::string_view name : {"A", "B", "C", "D"}) {
    ExperimentConfig cfg = config;
    cfg.variant = *ModelVariant::preset(name);
    cfg.output_dir = config.output_dir / std::string(name);
    results.push_back(run_experiment(cfg, options));
  }
  if (options.write_files) {
    auto csv = open_output(config.output_dir / "comparison.csv");
    csv << "variant,viability_mean,viability_sem,eat_pct,play_pct,explore_pct,"
           "median_comfort_mean,median_comfort_sem,cortisol_mean,cortisol_sem,discarded\n";
    for (const auto& r : results) {
      const auto& a = r.aggregate;
      fmt::print(csv, "{},{},{},{},{},{},{},{},{},{},{}\n", r.config.variant.name(),
                 a.viability_pct.mean, a.viability_pct.sem, a.action_pct[0].mean,
                 a.action_pct[1].mean, a.action_pct[2].mean, a.median_comfort_pct.mean,
                 a.median_comfort_pct.sem, a.mean_cortisol.mean, a.mean_cortisol.sem,
                 r.discarded_seeds.size());
    }
    auto md = open_output(config.output_dir / "comparison.md");
    md << comparison_table_markdown(results);
  }
  return results;
}

}  // namespace allostasis
