#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "allostasis/generative_model.hpp"

namespace allostasis {

/// Feature gates distinguishing the four ablation models.
struct ModelVariant {
  bool allostatic_setpoint = false;
  bool learning = false;
  bool cortisol_modulates_learning = false;

  static ModelVariant homeostatic() { return {false, false, false}; }            // A
  static ModelVariant learning_only() { return {false, true, false}; }           // B
  static ModelVariant allostatic() { return {true, false, false}; }              // C
  static ModelVariant allostatic_learning() { return {true, true, true}; }       // D

  /// "A".."D" for the presets, "custom" otherwise.
  std::string name() const;
  static std::optional<ModelVariant> preset(std::string_view name);

  friend bool operator==(const ModelVariant&, const ModelVariant&) = default;
};

/// Calibration knobs from which the initial A/B/C/D arrays are built.
/// Explicit arrays in `overrides` take precedence over the knobs.
struct ModelKnobs {
  // p(signal | state) for each state's signature modalities.
  double likelihood_strength = 0.95;
  // Mass a consummatory action moves from its deficit state to satisfied.
  double transition_bias = 0.8;
  // Mass a consummatory action keeps in place for every other state.
  double transition_persistence = 0.9;
  std::array<double, kNumStates> explore_column{0.2, 0.2, 0.6};
  double pref_tummy = 1.5;
  double pref_lonely = 2.5;
  double pref_food = 0.0;
  double pref_friend = 1.0;
  double dirichlet_concentration = 1.0;
  // Inverse temperature of the action posterior softmax(-precision * G).
  double policy_precision = 128.0;

  struct Overrides {
    std::array<std::optional<LikelihoodMatrix>, kNumModalities> likelihood{};
    std::array<std::optional<TransitionMatrix>, kNumActions> transition{};
    std::optional<std::array<double, kNumStates>> initial_prior{};
  } overrides;
};

struct SimulationConfig {
  std::size_t steps = 300;
  double resource_probability = 0.2;
  double gamma = 0.03;
  double learning_rate = 0.05;
  double initial_energy = 0.7;
  double initial_socialness = 0.7;
  double set_point = 0.7;
  double consumption_gain = 0.4;
  ModelKnobs knobs;
  // Debug only: replaces action selection with a fixed action.
  std::optional<Action> forced_action;
};

struct ExperimentConfig {
  ModelVariant variant = ModelVariant::allostatic_learning();
  SimulationConfig simulation;
  std::size_t runs = 10;
  std::uint64_t base_seed = 1;
  std::size_t max_attempt_factor = 10;
  std::size_t threads = 1;
  std::filesystem::path output_dir = "out";
};

/// Throws ConfigError on out-of-range parameters.
void validate(const SimulationConfig& config);
void validate(const ExperimentConfig& config);

/// Builds the generative model described by the knobs and overrides.
GenerativeModel build_generative_model(const ModelKnobs& knobs);

/// Plain-text `key = value` format, `#` starts a comment. Unknown keys and
/// malformed values throw ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies one key/value pair; shared by the file parser and CLI overrides.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Writes every setting plus the fully expanded model arrays, in a form
/// parse_config reads back to an equivalent config.
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace allostasis
