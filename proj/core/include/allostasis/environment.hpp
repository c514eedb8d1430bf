#pragma once

#include "allostasis/random.hpp"
#include "allostasis/types.hpp"

namespace allostasis {

inline constexpr double kDefaultResourceProbability = 0.2;

/// Resource presence for the current step. Unconsumed resources do not carry
/// over; `explore_pending` forces both resources on the next generation.
struct WorldState {
  bool food_present = false;
  bool friend_present = false;
  bool explore_pending = false;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

struct ActionOutcome {
  Action action = Action::Explore;
  bool consumed_food = false;
  bool consumed_friend = false;

  bool succeeded() const noexcept {
    return action == Action::Explore || consumed_food || consumed_friend;
  }
};

/// Draws this step's resources. Both draws are consumed from `rng` even when
/// the explore guarantee overrides them, so the stream position never depends
/// on the agent's choices.
WorldState step_generate(const WorldState& w, Rng& rng,
                         double resource_probability = kDefaultResourceProbability);

struct ExecutionResult {
  WorldState world;
  ActionOutcome outcome;
};

ExecutionResult execute_action(const WorldState& w, Action action) noexcept;

}  // namespace allostasis
