#include "allostasis/environment.hpp"

namespace allostasis {

WorldState step_generate(const WorldState& w, Rng& rng, double resource_probability) {
  const bool food = bernoulli(rng, resource_probability);
  const bool friend_present = bernoulli(rng, resource_probability);
  if (w.explore_pending) return WorldState{true, true, false};
  return WorldState{food, friend_present, false};
}

ExecutionResult execute_action(const WorldState& w, Action action) noexcept {
  ExecutionResult r{w, ActionOutcome{action, false, false}};
  switch (action) {
    case Action::Eat:
      if (w.food_present) {
        r.outcome.consumed_food = true;
        r.world.food_present = false;
      }
      break;
    case Action::Play:
      if (w.friend_present) {
        r.outcome.consumed_friend = true;
        r.world.friend_present = false;
      }
      break;
    case Action::Explore:
      r.world.explore_pending = true;
      break;
  }
  return r;
}

}  // namespace allostasis
