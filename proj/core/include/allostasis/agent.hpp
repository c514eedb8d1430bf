#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "allostasis/config.hpp"
#include "allostasis/cortisol.hpp"
#include "allostasis/environment.hpp"
#include "allostasis/generative_model.hpp"
#include "allostasis/physiology.hpp"

namespace allostasis {

/// One row of an episode trace. Physiology values are read after the step's
/// decay; d_energy after the step's set-point adjustment.
struct StepRecord {
  std::size_t t = 0;
  double energy = 0.0;
  double socialness = 0.0;
  double d_energy = 0.0;
  double d_social = 0.0;
  double cortisol = 0.0;
  double lr_effective = 0.0;
  double surprisal = 0.0;
  double surprisal_delta = 0.0;  // "affective valence" trace
  Categorical q_s = Categorical::uniform(kNumStates);
  Categorical q_u = Categorical::uniform(kNumActions);
  Action action = Action::Explore;
  bool action_succeeded = false;
  ObservationBundle obs;
  bool alive = true;
};

/// Stages of one step, in execution order.
enum class Stage : std::uint8_t {
  Generate = 1,
  Observe,
  Infer,
  Secrete,
  AdjustSetPoint,
  Select,
  Execute,
  Decay,
  Learn,
};

std::string_view to_string(Stage stage) noexcept;

/// Receives a human-readable line per stage; used by the `trace` command.
using StageLogger = std::function<void(std::size_t t, Stage stage, std::string_view detail)>;

/// One agent living in one world. Owns its model, body, hormone state and
/// both random streams; steps strictly sequentially.
class Episode {
 public:
  Episode(const SimulationConfig& config, ModelVariant variant, std::uint64_t seed);

  /// Runs the nine stages once. Throws DeadAgent after death.
  StepRecord step();

  void set_stage_logger(StageLogger logger) { logger_ = std::move(logger); }

  bool alive() const noexcept { return physiology_.alive; }
  std::size_t steps_taken() const noexcept { return t_; }
  const GenerativeModel& model() const noexcept { return model_; }
  const PhysiologyState& physiology() const noexcept { return physiology_; }
  const CortisolState& cortisol() const noexcept { return cortisol_; }
  const WorldState& world() const noexcept { return world_; }

 private:
  void log(Stage stage, std::string_view detail) const;

  SimulationConfig config_;
  ModelVariant variant_;
  GenerativeModel model_;
  RunStreams streams_;
  PhysiologyState physiology_;
  CortisolState cortisol_;
  WorldState world_;
  std::optional<Categorical> belief_;
  Action last_action_ = Action::Explore;
  std::size_t t_ = 0;
  StageLogger logger_;
};

using StepSink = std::function<void(const StepRecord&)>;

/// Runs until `config.steps` or death; each record is passed to `sink` as
/// soon as it exists. Throws ConfigError on invalid config.
std::vector<StepRecord> run_episode(const SimulationConfig& config, ModelVariant variant,
                                    std::uint64_t seed, const StepSink& sink = {});

}  // namespace allostasis
