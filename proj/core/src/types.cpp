#include "allostasis/error.hpp"
#include "allostasis/types.hpp"

namespace allostasis {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroEvidence: return "ZeroEvidence";
    case ErrorCode::AbsoluteContinuity: return "AbsoluteContinuity";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::DeadAgent: return "DeadAgent";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::FilterExhausted: return "FilterExhausted";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
  }
  return "Unknown";
}

std::string_view to_string(Action a) noexcept {
  switch (a) {
    case Action::Eat: return "eat";
    case Action::Play: return "play";
    case Action::Explore: return "explore";
  }
  return "?";
}

std::string_view to_string(MotivationState s) noexcept {
  switch (s) {
    case MotivationState::Hungry: return "hungry";
    case MotivationState::Playful: return "playful";
    case MotivationState::Satisfied: return "satisfied";
  }
  return "?";
}

std::string_view to_string(Modality m) noexcept {
  switch (m) {
    case Modality::Tummy: return "tummy";
    case Modality::Lonely: return "lonely";
    case Modality::Food: return "food";
    case Modality::Friend: return "friend";
  }
  return "?";
}

std::optional<Action> parse_action(std::string_view name) noexcept {
  for (Action a : kAllActions) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

}  // namespace allostasis
