#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "csa/dsl/barcode.hpp"

namespace csa::dsl {

enum class MediaKind { Image, Audio, Video, Text };

std::string_view to_string(MediaKind kind) noexcept;
std::optional<MediaKind> media_kind_from_string(std::string_view text) noexcept;

/// A named media blob. Names are flat identifiers: [A-Za-z0-9._-], at most
/// 128 bytes, not starting with '.', so they can never leave the media
/// directory of the repository.
struct MediaRef {
  std::string name;
  MediaKind kind = MediaKind::Image;

  friend bool operator==(const MediaRef&, const MediaRef&) = default;
};

bool is_safe_media_name(std::string_view name) noexcept;

struct FoodProduct {
  Barcode barcode;
  std::string name;
  std::string category;
  MediaRef image;

  friend bool operator==(const FoodProduct&, const FoodProduct&) = default;
};

/// Events an author may use to end a user instruction. SmokeDetected is a
/// runtime safety signal and deliberately absent here.
enum class TransitionKind { DoorOpen, DoorClosed, WeightChange, TimerExpired, UserConfirm };

std::string_view to_string(TransitionKind kind) noexcept;
std::optional<TransitionKind> transition_kind_from_string(std::string_view text) noexcept;

struct TransitionSpec {
  TransitionKind kind = TransitionKind::UserConfirm;
  // WeightChange only. Positive = food placed, negative = food removed.
  std::int64_t min_delta_grams = 0;
  // TimerExpired only.
  std::int64_t duration_seconds = 0;

  static TransitionSpec door_open() { return {TransitionKind::DoorOpen}; }
  static TransitionSpec door_closed() { return {TransitionKind::DoorClosed}; }
  static TransitionSpec user_confirm() { return {TransitionKind::UserConfirm}; }
  static TransitionSpec weight_change(std::int64_t grams) {
    return {TransitionKind::WeightChange, grams, 0};
  }
  static TransitionSpec timer(std::int64_t seconds) {
    return {TransitionKind::TimerExpired, 0, seconds};
  }

  friend bool operator==(const TransitionSpec&, const TransitionSpec&) = default;
};

struct Activations {
  bool light = true;
  bool carousel = true;
  bool magnetron = true;
  // Kept in the wire format to document intent; must always be false.
  bool smoke_alarm_audible = false;

  friend bool operator==(const Activations&, const Activations&) = default;
};

struct UserInstruction {
  std::string text;
  std::optional<MediaRef> image;
  std::optional<MediaRef> audio;
  std::optional<MediaRef> video;
  TransitionSpec until;

  /// Image, video, then audio: the order media are presented in.
  std::vector<MediaRef> media() const;

  friend bool operator==(const UserInstruction&, const UserInstruction&) = default;
};

struct DeviceInstruction {
  std::int64_t power_watts = 600;
  std::int64_t duration_seconds = 60;
  Activations activations;

  friend bool operator==(const DeviceInstruction&, const DeviceInstruction&) = default;
};

using Instruction = std::variant<UserInstruction, DeviceInstruction>;

inline bool is_user(const Instruction& i) noexcept {
  return std::holds_alternative<UserInstruction>(i);
}
inline bool is_device(const Instruction& i) noexcept {
  return std::holds_alternative<DeviceInstruction>(i);
}

struct CookingInstructionSet {
  std::string id;
  std::int64_t ability_level = 1;
  std::vector<Instruction> instructions;

  friend bool operator==(const CookingInstructionSet&, const CookingInstructionSet&) = default;
};

struct ProductResource {
  FoodProduct product;
  std::vector<CookingInstructionSet> instruction_sets;

  friend bool operator==(const ProductResource&, const ProductResource&) = default;
};

// Envelope for device instructions; values outside are lint errors (L3).
inline constexpr std::int64_t kMinPowerWatts = 50;
inline constexpr std::int64_t kMaxPowerWatts = 1200;
inline constexpr std::int64_t kMinDurationSeconds = 1;
inline constexpr std::int64_t kMaxDurationSeconds = 3600;

}  // namespace csa::dsl
