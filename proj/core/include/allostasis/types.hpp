#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace allostasis {

inline constexpr std::size_t kNumStates = 3;
inline constexpr std::size_t kNumActions = 3;
inline constexpr std::size_t kNumModalities = 4;
inline constexpr std::size_t kNumOutcomes = 2;

// Hidden motivational state.
enum class MotivationState : std::uint8_t { Hungry = 0, Playful = 1, Satisfied = 2 };

enum class Action : std::uint8_t { Eat = 0, Play = 1, Explore = 2 };

// Observation modalities: two interoceptive, two exteroceptive.
enum class Modality : std::uint8_t { Tummy = 0, Lonely = 1, Food = 2, Friend = 3 };

inline constexpr std::array<Action, kNumActions> kAllActions{Action::Eat, Action::Play,
                                                             Action::Explore};
inline constexpr std::array<Modality, kNumModalities> kAllModalities{
    Modality::Tummy, Modality::Lonely, Modality::Food, Modality::Friend};

constexpr std::size_t index(Action a) noexcept { return static_cast<std::size_t>(a); }
constexpr std::size_t index(Modality m) noexcept { return static_cast<std::size_t>(m); }
constexpr std::size_t index(MotivationState s) noexcept { return static_cast<std::size_t>(s); }

std::string_view to_string(Action a) noexcept;
std::string_view to_string(MotivationState s) noexcept;
std::string_view to_string(Modality m) noexcept;
std::optional<Action> parse_action(std::string_view name) noexcept;

// One binary outcome per modality. Outcome 1 is the "signal" outcome:
// tummy-rumble, loneliness, food present, friend present.
struct ObservationBundle {
  std::array<std::uint8_t, kNumModalities> outcome{};

  std::uint8_t operator[](Modality m) const noexcept { return outcome[index(m)]; }
  std::uint8_t& operator[](Modality m) noexcept { return outcome[index(m)]; }

  static ObservationBundle make(bool tummy_rumble, bool lonely, bool food, bool friend_present) {
    return ObservationBundle{{static_cast<std::uint8_t>(tummy_rumble),
                              static_cast<std::uint8_t>(lonely), static_cast<std::uint8_t>(food),
                              static_cast<std::uint8_t>(friend_present)}};
  }

  // Index into the 16 joint outcomes, tummy as the most significant bit.
  std::size_t joint_index() const noexcept {
    return (std::size_t{outcome[0]} << 3) | (std::size_t{outcome[1]} << 2) |
           (std::size_t{outcome[2]} << 1) | std::size_t{outcome[3]};
  }

  friend bool operator==(const ObservationBundle&, const ObservationBundle&) = default;
};

}  // namespace allostasis
