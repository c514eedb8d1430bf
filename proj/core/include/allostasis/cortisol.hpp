#pragma once

#include "allostasis/inference.hpp"

namespace allostasis {

inline constexpr double kDefaultLearningRate = 0.05;
/// Lower bound on a cortisol drop inside the set-point divisor.
inline constexpr double kMinCortisolDelta = -0.999;

/// Cortisol level plus the previous step's level and surprisal.
struct CortisolState {
  double level = 0.0;           // [0, 1]
  double prev_surprisal = 0.0;  // surprisal at t-1
  double prev_level = 0.0;      // level at t-1

  /// Level 0, with the first observation's surprisal as the reference so the
  /// first surprisal difference is zero.
  static CortisolState initial(double first_surprisal) noexcept {
    return CortisolState{0.0, first_surprisal, 0.0};
  }

  double delta() const noexcept { return level - prev_level; }
};

/// level += (s_t - prev_surprisal) + (1 - (max q_u - min q_u)), clamped to [0, 1].
CortisolState secrete(const CortisolState& c, double surprisal_now, const Categorical& q_u);

/// d / (1 + level - prev_level), clamped to [kMinSetPoint, kMaxSetPoint].
double adjust_set_point(double previous_set_point, const CortisolState& c);

/// base * (1 - level).
double modulated_learning_rate(double base_rate, const CortisolState& c);

}  // namespace allostasis
