#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "csa/dsl/types.hpp"
#include "csa/engine/workflow.hpp"
#include "csa/sim/appliance.hpp"

namespace csa::host {

namespace input {
struct Abort { friend bool operator==(Abort, Abort) = default; };
struct Advance {
  std::int64_t dt_millis = 1000;
  friend bool operator==(Advance, Advance) = default;
};
}  // namespace input

/// Everything a session accepts: a physical user action, a cancellation, or
/// virtual time passing.
using Input = std::variant<sim::Action, input::Abort, input::Advance>;

std::string input_name(const Input& in);
nlohmann::ordered_json to_json(const Input& in);
/// Accepts every sim action plus {"action":"Abort"} and
/// {"action":"Advance","dtMillis":n}.
Input input_from_json(const nlohmann::json& j);

struct HostConfig {
  sim::SimConfig sim;
  engine::EngineConfig engine;
};

struct StepRecord {
  std::int64_t t_millis = 0;  // virtual clock after the input
  std::optional<Input> input;  // empty for session start
  engine::Phase phase;
  std::vector<engine::Effect> effects;
};

struct RaisedAlert {
  std::int64_t t_millis = 0;
  engine::effect::Alert alert;
};

/// Couples one workflow-engine session to one simulated appliance. Every
/// input is applied to completion (sim events -> engine steps -> effects ->
/// sim) before the next; the caller serializes inputs.
class SessionHost {
 public:
  /// Throws engine::LintDirty for a set with lint errors.
  explicit SessionHost(dsl::CookingInstructionSet set, HostConfig config = {});

  /// Throws sim::PreconditionViolated (state unchanged) or
  /// std::invalid_argument for a non-positive advance.
  StepRecord apply(const Input& in);

  const StepRecord& start_record() const noexcept { return start_; }
  const engine::SessionState& engine() const noexcept { return engine_; }
  const sim::ApplianceState& appliance() const noexcept { return appliance_; }
  const HostConfig& config() const noexcept { return config_; }
  std::int64_t clock_millis() const noexcept { return appliance_.clock_millis; }

  const std::vector<engine::Effect>& last_effects() const noexcept { return last_effects_; }
  const std::vector<RaisedAlert>& alerts() const noexcept { return alerts_; }
  /// Most recent ShowInstruction, i.e. what the screen shows now.
  const std::optional<engine::effect::ShowInstruction>& display() const noexcept { return display_; }

  /// Engine phase, appliance readouts, display, pending media, alerts and
  /// faults as one JSON object.
  nlohmann::ordered_json to_json() const;

 private:
  void feed(const engine::Event& e, std::vector<engine::Effect>& out);
  void sync_power();
  std::int64_t next_tick(std::int64_t remaining) const;

  HostConfig config_;
  engine::SessionState engine_;
  sim::ApplianceState appliance_;
  StepRecord start_;
  std::vector<engine::Effect> last_effects_;
  std::vector<RaisedAlert> alerts_;
  std::optional<engine::effect::ShowInstruction> display_;
};

}  // namespace csa::host
