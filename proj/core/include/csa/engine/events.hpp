#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "csa/dsl/types.hpp"

namespace csa::engine {

namespace event {
struct DoorOpen { friend bool operator==(DoorOpen, DoorOpen) = default; };
struct DoorClosed { friend bool operator==(DoorClosed, DoorClosed) = default; };
struct WeightChange {
  std::int64_t delta_grams = 0;  // non-zero
  friend bool operator==(WeightChange, WeightChange) = default;
};
struct SmokeDetected { friend bool operator==(SmokeDetected, SmokeDetected) = default; };
struct UserConfirm { friend bool operator==(UserConfirm, UserConfirm) = default; };
struct Tick {
  std::int64_t dt_millis = 0;  // positive
  friend bool operator==(Tick, Tick) = default;
};
struct Abort { friend bool operator==(Abort, Abort) = default; };
}  // namespace event

using Event = std::variant<event::DoorOpen, event::DoorClosed, event::WeightChange, event::SmokeDetected,
                           event::UserConfirm, event::Tick, event::Abort>;

std::string_view event_name(const Event& e) noexcept;

/// Throws std::invalid_argument for a zero weight delta or non-positive tick.
void check_event(const Event& e);

enum class AlertKind { Smoke, DoorLeftOpen, Aborted };

std::string_view to_string(AlertKind kind) noexcept;

namespace effect {
struct SetMagnetron { bool on = false; friend bool operator==(SetMagnetron, SetMagnetron) = default; };
struct SetCarousel { bool on = false; friend bool operator==(SetCarousel, SetCarousel) = default; };
struct SetLight { bool on = false; friend bool operator==(SetLight, SetLight) = default; };
struct ShowInstruction {
  std::string text;
  std::vector<dsl::MediaRef> media;
  friend bool operator==(const ShowInstruction&, const ShowInstruction&) = default;
};
struct PlayAudio {
  dsl::MediaRef clip;
  friend bool operator==(const PlayAudio&, const PlayAudio&) = default;
};
struct Suggest {
  std::string text;
  std::vector<dsl::MediaRef> media;
  friend bool operator==(const Suggest&, const Suggest&) = default;
};
struct Alert {
  AlertKind kind = AlertKind::Smoke;
  std::string text;
  friend bool operator==(const Alert&, const Alert&) = default;
};
struct SessionComplete { friend bool operator==(SessionComplete, SessionComplete) = default; };
}  // namespace effect

// There is intentionally no constructor for an audible alarm: smoke is
// reported through Alert plus a calm PlayAudio clip.
using Effect = std::variant<effect::SetMagnetron, effect::SetCarousel, effect::SetLight, effect::ShowInstruction,
                            effect::PlayAudio, effect::Suggest, effect::Alert, effect::SessionComplete>;

std::string_view effect_name(const Effect& e) noexcept;

inline bool is_actuator(const Effect& e) noexcept { return e.index() <= 2; }

}  // namespace csa::engine
