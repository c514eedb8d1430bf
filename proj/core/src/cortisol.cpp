#include "allostasis/cortisol.hpp"

#include <algorithm>
#include <string>

#include "allostasis/error.hpp"
#include "allostasis/physiology.hpp"

namespace allostasis {

CortisolState secrete(const CortisolState& c, double surprisal_now, const Categorical& q_u) {
  if (!(surprisal_now >= 0.0)) {
    throw Error(ErrorCode::DomainError, "surprisal must be non-negative");
  }
  const double surprise_change = surprisal_now - c.prev_surprisal;
  const double indecision = 1.0 - (q_u.max() - q_u.min());
  return CortisolState{std::clamp(c.level + surprise_change + indecision, 0.0, 1.0),
                       surprisal_now, c.level};
}

double adjust_set_point(double previous_set_point, const CortisolState& c) {
  const double delta = std::max(c.delta(), kMinCortisolDelta);
  const double denominator = 1.0 + delta;
  if (!(denominator > 0.0)) {
    throw Error(ErrorCode::SingularDenominator,
                "cortisol change " + std::to_string(c.delta()) + " zeroes the set-point divisor");
  }
  return std::clamp(previous_set_point / denominator, kMinSetPoint, kMaxSetPoint);
}

double modulated_learning_rate(double base_rate, const CortisolState& c) {
  if (!(base_rate >= 0.0)) throw Error(ErrorCode::DomainError, "learning rate must be non-negative");
  return base_rate * (1.0 - std::clamp(c.level, 0.0, 1.0));
}

}  // namespace allostasis
