#pragma once

#include "allostasis/environment.hpp"

namespace allostasis {

inline constexpr double kDefaultDecay = 0.03;
inline constexpr double kDefaultSetPoint = 0.7;
inline constexpr double kDefaultConsumptionGain = 0.4;
inline constexpr double kMinSetPoint = 0.05;
inline constexpr double kMaxSetPoint = 0.99;

struct InternalVariable {
  double value = kDefaultSetPoint;      // [0, 1]
  double set_point = kDefaultSetPoint;  // [kMinSetPoint, kMaxSetPoint]
  double decay = kDefaultDecay;         // loss per step

  friend bool operator==(const InternalVariable&, const InternalVariable&) = default;
};

/// Energy is life-critical; Socialness only drives loneliness and comfort.
struct PhysiologyState {
  InternalVariable energy;
  InternalVariable socialness;
  bool alive = true;

  friend bool operator==(const PhysiologyState&, const PhysiologyState&) = default;
};

struct InteroceptiveSignals {
  bool tummy_rumble = false;
  bool lonely = false;
};

/// Subtracts each variable's decay, floors at 0, and marks death once energy
/// reaches 0. Throws DeadAgent.
PhysiologyState decay_step(PhysiologyState p);

/// +gain to energy on a successful eat, to socialness on a successful play,
/// capped at 1. Throws DeadAgent.
PhysiologyState apply_consumption(PhysiologyState p, const ActionOutcome& outcome,
                                  double gain = kDefaultConsumptionGain);

/// A signal fires strictly below its set point.
InteroceptiveSignals interoceptive_signals(const PhysiologyState& p) noexcept;

}  // namespace allostasis
