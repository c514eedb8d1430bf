// Command-line front end: run one preset, sweep all four, or trace a single
// seeded episode stage by stage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "allostasis/agent.hpp"
#include "allostasis/config.hpp"
#include "allostasis/error.hpp"
#include "allostasis/experiment.hpp"
#include "allostasis/trace_io.hpp"

namespace {

using namespace allostasis;

constexpr int kExitConfig = 2;
constexpr int kExitFilterExhausted = 3;
constexpr int kExitIo = 4;

// Flags are collected as raw strings and applied through the same setter as
// the config file, so both routes share validation.
struct CommonOptions {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<std::string> raw_overrides;
  bool no_timestamp = false;
};

void add_setting_flag(CLI::App* cmd, CommonOptions& opts, const std::string& flag,
                      const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&opts, key](const std::string& v) { opts.settings.emplace_back(key, v); }, help);
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_preset) {
  cmd->add_option("-c,--config", opts.config_path, "key = value config file")->check(CLI::ExistingFile);
  add_setting_flag(cmd, opts, "--seed", "base_seed", "base seed (required)");
  cmd->get_option("--seed")->required();
  if (with_preset) add_setting_flag(cmd, opts, "-p,--preset", "variant", "model preset A|B|C|D");
  add_setting_flag(cmd, opts, "-o,--out", "output_dir", "output directory");
  add_setting_flag(cmd, opts, "--steps", "steps", "steps per episode");
  add_setting_flag(cmd, opts, "--runs", "runs", "valid runs per preset");
  add_setting_flag(cmd, opts, "--threads", "threads", "worker threads");
  add_setting_flag(cmd, opts, "--resource-probability", "resource_probability", "per-step resource probability");
  add_setting_flag(cmd, opts, "--gamma", "gamma", "decay per step");
  add_setting_flag(cmd, opts, "--lambda", "lambda", "base learning rate");
  add_setting_flag(cmd, opts, "--set-point", "set_point", "initial set points");
  add_setting_flag(cmd, opts, "--consumption-gain", "consumption_gain", "gain of a successful eat/play");
  add_setting_flag(cmd, opts, "--forced-action", "forced_action", "debug: always take this action");
  cmd->add_option("--set", opts.raw_overrides, "extra key=value overrides (repeatable)");
  cmd->add_flag("--no-timestamp", opts.no_timestamp, "leave summary.json metadata timestamp empty");
}

ExperimentConfig resolve(const CommonOptions& opts) {
  ExperimentConfig cfg = opts.config_path.empty() ? ExperimentConfig{} : load_config(opts.config_path);
  for (const auto& [k, v] : opts.settings) apply_setting(cfg, k, v);
  for (const auto& raw : opts.raw_overrides) {
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "--set expects key=value, got " + raw);
    apply_setting(cfg, raw.substr(0, eq), raw.substr(eq + 1));
  }
  validate(cfg);
  return cfg;
}

void print_result(const ExperimentResult& r) {
  const auto& a = r.aggregate;
  fmt::print("model {}: viability {:.1f}±{:.1f}%  eat/play/explore {:.0f}/{:.0f}/{:.0f}%  "
             "comfort {:.1f}±{:.1f}%  cortisol {:.3f}±{:.3f}  discarded {}\n",
             r.config.variant.name(), a.viability_pct.mean, a.viability_pct.sem,
             a.action_pct[0].mean, a.action_pct[1].mean, a.action_pct[2].mean,
             a.median_comfort_pct.mean, a.median_comfort_pct.sem, a.mean_cortisol.mean,
             a.mean_cortisol.sem, r.discarded_seeds.size());
}

int run_trace(const ExperimentConfig& cfg, const std::string& log_path) {
  std::filesystem::create_directories(cfg.output_dir);
  {
    std::ofstream cfg_out(cfg.output_dir / "config.txt");
    if (!cfg_out) throw Error(ErrorCode::IoError, "cannot write config.txt");
    write_config(cfg_out, cfg);
  }
  std::ofstream log_file;
  if (!log_path.empty()) {
    log_file.open(log_path);
    if (!log_file) throw Error(ErrorCode::IoError, "cannot write " + log_path);
  }
  std::ostream& log = log_path.empty() ? std::cerr : log_file;

  TraceWriter writer(cfg.output_dir / trace_file_name(cfg.base_seed));
  Episode episode(cfg.simulation, cfg.variant, cfg.base_seed);
  episode.set_stage_logger([&log](std::size_t t, Stage stage, std::string_view detail) {
    fmt::print(log, "t={:<3} [{}] {:<16} {}\n", t, static_cast<int>(stage), to_string(stage), detail);
  });
  while (episode.alive() && episode.steps_taken() < cfg.simulation.steps) {
    writer.write(episode.step());
  }
  fmt::print("model {} seed {}: {} steps, {}\n", cfg.variant.name(), cfg.base_seed,
             episode.steps_taken(), episode.alive() ? "alive" : "died");
  fmt::print("trace written to {}\n", writer.path().string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active-inference agent with cortisol-mediated allostatic regulation"};
  app.require_subcommand(1);

  CommonOptions run_opts, sweep_opts, trace_opts;
  auto* run = app.add_subcommand("run", "run one preset for N filtered seeds");
  add_common(run, run_opts, true);
  auto* sweep = app.add_subcommand("sweep", "run presets A-D and write a comparison table");
  add_common(sweep, sweep_opts, false);
  auto* trace = app.add_subcommand("trace", "single seeded episode with per-stage debug log");
  add_common(trace, trace_opts, true);
  std::string trace_log;
  trace->add_option("--log", trace_log, "stage log file (default: stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      const auto cfg = resolve(run_opts);
      const auto result = run_experiment(cfg, {true, !run_opts.no_timestamp});
      print_result(result);
    } else if (sweep->parsed()) {
      const auto cfg = resolve(sweep_opts);
      const auto results = run_sweep(cfg, {true, !sweep_opts.no_timestamp});
      for (const auto& r : results) print_result(r);
      fmt::print("\n{}", comparison_table_markdown(results));
    } else if (trace->parsed()) {
      return run_trace(resolve(trace_opts), trace_log);
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    switch (e.code()) {
      case ErrorCode::FilterExhausted: return kExitFilterExhausted;
      case ErrorCode::IoError: return kExitIo;
      default: return kExitConfig;
    }
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitIo;
  }
  return 0;
}
