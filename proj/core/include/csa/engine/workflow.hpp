#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "csa/dsl/lint.hpp"
#include "csa/dsl/types.hpp"
#include "csa/engine/events.hpp"

namespace csa::engine {

struct EngineConfig {
  // Repeating reminder while heating is paused by an open door.
  std::int64_t door_left_open_timeout_millis = 30'000;
  // Played with every smoke alert in place of an alarm siren.
  dsl::MediaRef smoke_clip{"calm-smoke-notice.ogg", dsl::MediaKind::Audio};

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

namespace phase {
struct AwaitingUser {
  std::size_t index = 0;
  friend bool operator==(AwaitingUser, AwaitingUser) = default;
};
struct Heating {
  std::size_t index = 0;
  std::int64_t remaining_millis = 0;
  friend bool operator==(Heating, Heating) = default;
};
struct HeatingPaused {
  std::size_t index = 0;
  std::int64_t remaining_millis = 0;
  friend bool operator==(HeatingPaused, HeatingPaused) = default;
};
struct SmokeHold {
  std::size_t index = 0;
  friend bool operator==(SmokeHold, SmokeHold) = default;
};
struct Complete { friend bool operator==(Complete, Complete) = default; };
struct Aborted { friend bool operator==(Aborted, Aborted) = default; };
}  // namespace phase

using Phase = std::variant<phase::AwaitingUser, phase::Heating, phase::HeatingPaused, phase::SmokeHold,
                           phase::Complete, phase::Aborted>;

std::string_view phase_name(const Phase& p) noexcept;
/// Instruction index of the phase; absent for Complete and Aborted.
std::optional<std::size_t> phase_index(const Phase& p) noexcept;
/// Remaining heat time for Heating/HeatingPaused.
std::optional<std::int64_t> phase_remaining(const Phase& p) noexcept;

/// The immutable program a session runs. Shared between all states of one
/// session so that stepping never copies the instruction list.
struct Workflow {
  dsl::CookingInstructionSet set;
  EngineConfig config;

  friend bool operator==(const Workflow&, const Workflow&) = default;
};

struct SessionState {
  Phase phase;
  bool door_open = false;
  std::int64_t elapsed_in_phase_millis = 0;
  std::shared_ptr<const Workflow> workflow;

  const dsl::CookingInstructionSet& set() const { return workflow->set; }

  friend bool operator==(const SessionState& a, const SessionState& b) {
    return a.phase == b.phase && a.door_open == b.door_open &&
           a.elapsed_in_phase_millis == b.elapsed_in_phase_millis &&
           (a.workflow == b.workflow || *a.workflow == *b.workflow);
  }
};

struct StepResult {
  SessionState state;
  std::vector<Effect> effects;  // actuator effects precede media effects
};

class LintDirty : public std::invalid_argument {
 public:
  explicit LintDirty(dsl::LintReport report);
  const dsl::LintReport& report() const noexcept { return report_; }

 private:
  dsl::LintReport report_;
};

/// Enters instruction 0. Throws LintDirty if the set has lint errors.
StepResult init_session(dsl::CookingInstructionSet set, EngineConfig config = {});

/// The full transition function. Total over valid states; pure.
StepResult step(const SessionState& state, const Event& event);

std::optional<dsl::TransitionSpec> expected_transition(const SessionState& state);

bool is_terminal(const SessionState& state) noexcept;

}  // namespace csa::engine
