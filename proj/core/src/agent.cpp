#include "allostasis/agent.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "allostasis/error.hpp"

namespace allostasis {

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Generate: return "generate";
    case Stage::Observe: return "observe";
    case Stage::Infer: return "infer";
    case Stage::Secrete: return "secrete";
    case Stage::AdjustSetPoint: return "adjust_set_point";
    case Stage::Select: return "select";
    case Stage::Execute: return "execute";
    case Stage::Decay: return "decay";
    case Stage::Learn: return "learn";
  }
  return "?";
}

namespace {

PhysiologyState initial_physiology(const SimulationConfig& c) {
  PhysiologyState p;
  p.energy = InternalVariable{c.initial_energy, c.set_point, c.gamma};
  p.socialness = InternalVariable{c.initial_socialness, c.set_point, c.gamma};
  p.alive = true;
  return p;
}

}  // namespace

Episode::Episode(const SimulationConfig& config, ModelVariant variant, std::uint64_t seed)
    : config_(config),
      variant_(variant),
      model_(build_generative_model(config.knobs)),
      streams_(RunStreams::from_seed(seed)),
      physiology_(initial_physiology(config)) {}

void Episode::log(Stage stage, std::string_view detail) const {
  if (logger_) logger_(t_, stage, detail);
}

StepRecord Episode::step() {
  if (!physiology_.alive) {
    throw Error(ErrorCode::DeadAgent, fmt::format("step {} requested after death", t_));
  }
  StepRecord rec;
  rec.t = t_;

  // 1. world generates resources
  world_ = step_generate(world_, streams_.environment, config_.resource_probability);
  log(Stage::Generate, fmt::format("food={} friend={}", world_.food_present, world_.friend_present));

  // 2. agent observes body and world
  const auto intero = interoceptive_signals(physiology_);
  rec.obs = ObservationBundle::make(intero.tummy_rumble, intero.lonely, world_.food_present,
                                    world_.friend_present);
  log(Stage::Observe, fmt::format("tummy={} lonely={} (energy={} d={}; social={} d={})",
                                  intero.tummy_rumble, intero.lonely, physiology_.energy.value,
                                  physiology_.energy.set_point, physiology_.socialness.value,
                                  physiology_.socialness.set_point));

  // 3. state inference, surprisal, expected free energy
  const Categorical prior =
      belief_ ? model_.predictive_state(*belief_, last_action_) : model_.initial_prior();
  const Categorical q_s = model_.infer_state(rec.obs, prior);
  rec.surprisal = surprisal(model_.marginal_obs_likelihood(rec.obs, prior));
  const EfeBreakdown efe = model_.evaluate_actions(q_s);
  const Categorical q_u = action_posterior(efe, config_.knobs.policy_precision);
  log(Stage::Infer,
      fmt::format("prior=[{:.6g}] q_s=[{:.6g}] surprisal={:.6g} G=[{:.6g}, {:.6g}, {:.6g}] q_u=[{:.6g}]",
                  fmt::join(prior.probs(), ", "), fmt::join(q_s.probs(), ", "), rec.surprisal,
                  efe[0].total, efe[1].total, efe[2].total, fmt::join(q_u.probs(), ", ")));

  // 4. cortisol is secreted in every variant; only its effects are gated
  if (t_ == 0) cortisol_ = CortisolState::initial(rec.surprisal);
  rec.surprisal_delta = rec.surprisal - cortisol_.prev_surprisal;
  cortisol_ = secrete(cortisol_, rec.surprisal, q_u);
  log(Stage::Secrete, fmt::format("cortisol {:.6g} -> {:.6g}", cortisol_.prev_level, cortisol_.level));

  // 5. allostatic set-point adjustment (energy only)
  if (variant_.allostatic_setpoint) {
    const double before = physiology_.energy.set_point;
    physiology_.energy.set_point = adjust_set_point(before, cortisol_);
    log(Stage::AdjustSetPoint,
        fmt::format("d_energy {:.6g} -> {:.6g}", before, physiology_.energy.set_point));
  } else {
    log(Stage::AdjustSetPoint, "gated off");
  }

  // 6. action selection
  const Action action =
      config_.forced_action ? *config_.forced_action : select_action(q_u, streams_.agent);
  log(Stage::Select, fmt::format("{}{}", to_string(action), config_.forced_action ? " (forced)" : ""));

  // 7. execution and consumption
  const auto executed = execute_action(world_, action);
  world_ = executed.world;
  physiology_ = apply_consumption(physiology_, executed.outcome, config_.consumption_gain);
  log(Stage::Execute, fmt::format("succeeded={} energy={} social={}", executed.outcome.succeeded(),
                                  physiology_.energy.value, physiology_.socialness.value));

  // 8. decay and death check
  physiology_ = decay_step(physiology_);
  log(Stage::Decay, fmt::format("energy={} social={} alive={}", physiology_.energy.value,
                                physiology_.socialness.value, physiology_.alive));

  // 9. transition learning for the action that led into this step
  double lr = 0.0;
  if (variant_.learning) {
    lr = variant_.cortisol_modulates_learning
             ? modulated_learning_rate(config_.learning_rate, cortisol_)
             : config_.learning_rate;
    if (belief_) {
      model_.update_transitions(*belief_, q_s, last_action_, lr);
      log(Stage::Learn, fmt::format("b[{}] += {:.6g} * outer(q_s, q_prev)", to_string(last_action_), lr));
    } else {
      log(Stage::Learn, "no previous action");
    }
  } else {
    log(Stage::Learn, "gated off");
  }

  rec.energy = physiology_.energy.value;
  rec.socialness = physiology_.socialness.value;
  rec.d_energy = physiology_.energy.set_point;
  rec.d_social = physiology_.socialness.set_point;
  rec.cortisol = cortisol_.level;
  rec.lr_effective = lr;
  rec.q_s = q_s;
  rec.q_u = q_u;
  rec.action = action;
  rec.action_succeeded = executed.outcome.succeeded();
  rec.alive = physiology_.alive;

  belief_ = q_s;
  last_action_ = action;
  ++t_;
  return rec;
}

std::vector<StepRecord> run_episode(const SimulationConfig& config, ModelVariant variant,
                                    std::uint64_t seed, const StepSink& sink) {
  validate(config);
  if (variant.cortisol_modulates_learning && !variant.learning) {
    throw Error(ErrorCode::ConfigError, "cortisol_modulates_learning requires learning");
  }
  Episode episode(config, variant, seed);
  std::vector<StepRecord> trace;
  trace.reserve(config.steps);
  while (episode.alive() && episode.steps_taken() < config.steps) {
    trace.push_back(episode.step());
    if (sink) sink(trace.back());
  }
  return trace;
}

}  // namespace allostasis
