#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "csa/engine/events.hpp"

namespace csa::sim {

/// Lumped first-order thermal model parameters.
struct SimConfig {
  double efficiency = 0.5;                   // absorbed fraction of magnetron power, (0, 1]
  double specific_heat_j_per_kg_k = 4186.0;  // > 0
  double cooling_coeff_per_sec = 0.005;      // >= 0
  double smoke_point_c = 150.0;
  double ambient_c = 20.0;
  std::int64_t tick_millis = 250;  // > 0

  /// Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct HardwareFault {
  std::int64_t clock_millis = 0;
  std::string what;

  friend bool operator==(const HardwareFault&, const HardwareFault&) = default;
};

struct ApplianceState {
  bool door_open = false;
  std::int64_t load_grams = 0;
  double food_temp_c = 20.0;
  double ambient_c = 20.0;
  bool smoke_active = false;  // latched on detection, cleared by removing the load
  bool magnetron_on = false;
  bool carousel_on = false;
  bool light_on = false;
  std::int64_t clock_millis = 0;
  // Power of the running heating step; supplied by the session host.
  std::int64_t power_watts = 0;
  std::vector<HardwareFault> faults;  // append-only

  static ApplianceState initial(const SimConfig& config);

  friend bool operator==(const ApplianceState&, const ApplianceState&) = default;
};

namespace action {
struct OpenDoor { friend bool operator==(OpenDoor, OpenDoor) = default; };
struct CloseDoor { friend bool operator==(CloseDoor, CloseDoor) = default; };
struct PlaceLoad {
  std::int64_t grams = 400;
  double initial_temp_c = 5.0;
  friend bool operator==(PlaceLoad, PlaceLoad) = default;
};
struct RemoveLoad { friend bool operator==(RemoveLoad, RemoveLoad) = default; };
struct Confirm { friend bool operator==(Confirm, Confirm) = default; };
struct ScanBarcode {
  std::string digits;
  friend bool operator==(const ScanBarcode&, const ScanBarcode&) = default;
};
}  // namespace action

using Action = std::variant<action::OpenDoor, action::CloseDoor, action::PlaceLoad, action::RemoveLoad,
                            action::Confirm, action::ScanBarcode>;

std::string_view action_name(const Action& a) noexcept;

/// A physically impossible user action. The appliance state is unchanged.
class PreconditionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimStep {
  ApplianceState state;
  std::vector<engine::Event> events;
};

/// Drives actuators. Switching the magnetron or carousel on while the door
/// is open is refused and recorded in the fault log; media effects do not
/// touch the hardware.
ApplianceState apply_effect(ApplianceState state, const engine::Effect& effect);

/// Advances the clock by `dt_millis` with one explicit Euler step. Emits
/// SmokeDetected (before the Tick) on the upward crossing of the smoke
/// point, at most once per load, and always a Tick.
SimStep tick(const ApplianceState& state, const SimConfig& config, std::int64_t dt_millis);

/// Throws PreconditionViolated for impossible actions (placing food through
/// a closed door, opening an open door, ...). Opening the door cuts the
/// magnetron and carousel through the door switch, as on real hardware.
SimStep user_action(const ApplianceState& state, const Action& action);

}  // namespace csa::sim
