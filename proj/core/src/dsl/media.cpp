#include <algorithm>

#include "csa/dsl/types.hpp"

namespace csa::dsl {

std::string_view to_string(MediaKind kind) noexcept {
  switch (kind) {
    case MediaKind::Image: return "image";
    case MediaKind::Audio: return "audio";
    case MediaKind::Video: return "video";
    case MediaKind::Text: return "text";
  }
  return "?";
}

std::optional<MediaKind> media_kind_from_string(std::string_view text) noexcept {
  for (auto k : {MediaKind::Image, MediaKind::Audio, MediaKind::Video, MediaKind::Text}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool is_safe_media_name(std::string_view name) noexcept {
  if (name.empty() || name.size() > 128 || name.front() == '.') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '.' || c == '_' || c == '-';
  });
}

std::string_view to_string(TransitionKind kind) noexcept {
  switch (kind) {
    case TransitionKind::DoorOpen: return "DoorOpen";
    case TransitionKind::DoorClosed: return "DoorClosed";
    case TransitionKind::WeightChange: return "WeightChange";
    case TransitionKind::TimerExpired: return "TimerExpired";
    case TransitionKind::UserConfirm: return "UserConfirm";
  }
  return "?";
}

std::optional<TransitionKind> transition_kind_from_string(std::string_view text) noexcept {
  for (auto k : {TransitionKind::DoorOpen, TransitionKind::DoorClosed, TransitionKind::WeightChange,
                 TransitionKind::TimerExpired, TransitionKind::UserConfirm}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::vector<MediaRef> UserInstruction::media() const {
  std::vector<MediaRef> out;
  for (const auto* m : {&image, &video, &audio}) {
    if (*m) out.push_back(**m);
  }
  return out;
}

}  // namespace csa::dsl
