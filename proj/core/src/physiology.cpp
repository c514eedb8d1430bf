#include "allostasis/physiology.hpp"

#include <algorithm>
#include <string>

#include "allostasis/error.hpp"

namespace allostasis {

namespace {

void require_alive(const PhysiologyState& p, const char* op) {
  if (!p.alive) throw Error(ErrorCode::DeadAgent, std::string(op) + " called on a dead agent");
}

}  // namespace

PhysiologyState decay_step(PhysiologyState p) {
  require_alive(p, "decay_step");
  for (InternalVariable* v : {&p.energy, &p.socialness}) {
    v->value = std::clamp(v->value - v->decay, 0.0, 1.0);
  }
  if (p.energy.value <= 0.0) p.alive = false;
  return p;
}

PhysiologyState apply_consumption(PhysiologyState p, const ActionOutcome& outcome, double gain) {
  require_alive(p, "apply_consumption");
  if (outcome.consumed_food) p.energy.value = std::min(p.energy.value + gain, 1.0);
  if (outcome.consumed_friend) p.socialness.value = std::min(p.socialness.value + gain, 1.0);
  return p;
}

InteroceptiveSignals interoceptive_signals(const PhysiologyState& p) noexcept {
  return {p.energy.value < p.energy.set_point, p.socialness.value < p.socialness.set_point};
}

}  // namespace allostasis
