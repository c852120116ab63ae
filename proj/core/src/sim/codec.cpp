#include "csa/sim/codec.hpp"

#include <stdexcept>

namespace csa::sim {

using nlohmann::json;

ordered_json to_json(const Action& a) {
  ordered_json j;
  j["action"] = action_name(a);
  if (const auto* p = std::get_if<action::PlaceLoad>(&a)) {
    j["grams"] = p->grams;
    j["initialTempC"] = p->initial_temp_c;
  } else if (const auto* b = std::get_if<action::ScanBarcode>(&a)) {
    j["digits"] = b->digits;
  }
  return j;
}

Action action_from_json(const json& j) {
  try {
    const auto name = j.at("action").get<std::string>();
    if (name == "OpenDoor") return action::OpenDoor{};
    if (name == "CloseDoor") return action::CloseDoor{};
    if (name == "PlaceLoad") {
      action::PlaceLoad p;
      if (j.contains("grams")) {
        if (!j["grams"].is_number_integer()) throw std::invalid_argument("grams must be an integer");
        p.grams = j["grams"].get<std::int64_t>();
      }
      if (j.contains("initialTempC")) p.initial_temp_c = j["initialTempC"].get<double>();
      return p;
    }
    if (name == "RemoveLoad") return action::RemoveLoad{};
    if (name == "Confirm") return action::Confirm{};
    if (name == "ScanBarcode") return action::ScanBarcode{j.at("digits").get<std::string>()};
    throw std::invalid_argument("unknown action \"" + name + "\"");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed action: ") + e.what());
  }
}

ordered_json to_json(const SimConfig& c) {
  ordered_json j;
  j["efficiency"] = c.efficiency;
  j["specificHeatJPerKgK"] = c.specific_heat_j_per_kg_k;
  j["coolingCoeffPerSec"] = c.cooling_coeff_per_sec;
  j["smokePointC"] = c.smoke_point_c;
  j["ambientC"] = c.ambient_c;
  j["tickMillis"] = c.tick_millis;
  return j;
}

SimConfig sim_config_from_json(const json& j) {
  SimConfig c;
  try {
    c.efficiency = j.value("efficiency", c.efficiency);
    c.specific_heat_j_per_kg_k = j.value("specificHeatJPerKgK", c.specific_heat_j_per_kg_k);
    c.cooling_coeff_per_sec = j.value("coolingCoeffPerSec", c.cooling_coeff_per_sec);
    c.smoke_point_c = j.value("smokePointC", c.smoke_point_c);
    c.ambient_c = j.value("ambientC", c.ambient_c);
    c.tick_millis = j.value("tickMillis", c.tick_millis);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed sim config: ") + e.what());
  }
  c.validate();
  return c;
}

ordered_json to_json(const ApplianceState& s) {
  ordered_json j;
  j["doorOpen"] = s.door_open;
  j["loadGrams"] = s.load_grams;
  j["foodTempC"] = s.food_temp_c;
  j["smoke"] = s.smoke_active;
  j["magnetron"] = s.magnetron_on;
  j["carousel"] = s.carousel_on;
  j["light"] = s.light_on;
  j["powerWatts"] = s.power_watts;
  j["clockMillis"] = s.clock_millis;
  ordered_json faults = ordered_json::array();
  for (const auto& f : s.faults) {
    ordered_json fj;
    fj["t"] = f.clock_millis;
    fj["what"] = f.what;
    faults.push_back(std::move(fj));
  }
  j["faults"] = std::move(faults);
  return j;
}

}  // namespace csa::sim
