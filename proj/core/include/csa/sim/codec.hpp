#pragma once

#include <json.hpp>

#include "csa/sim/appliance.hpp"

namespace csa::sim {

using ordered_json = nlohmann::ordered_json;

/// {"action":"PlaceLoad","grams":400,"initialTempC":5.0}
ordered_json to_json(const Action& a);
/// Throws std::invalid_argument on unknown or malformed actions.
Action action_from_json(const nlohmann::json& j);

ordered_json to_json(const SimConfig& c);
SimConfig sim_config_from_json(const nlohmann::json& j);

/// Sensor and actuator readouts plus the fault log.
ordered_json to_json(const ApplianceState& s);

}  // namespace csa::sim
