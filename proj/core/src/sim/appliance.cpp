#include "csa/sim/appliance.hpp"

#include <algorithm>
#include <cmath>

#include "csa/dsl/barcode.hpp"

namespace csa::sim {

void SimConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SimConfig: ") + what);
  };
  require(std::isfinite(efficiency) && efficiency > 0.0 && efficiency <= 1.0, "efficiency must be in (0, 1]");
  require(std::isfinite(specific_heat_j_per_kg_k) && specific_heat_j_per_kg_k > 0.0,
          "specific heat must be positive");
  require(std::isfinite(cooling_coeff_per_sec) && cooling_coeff_per_sec >= 0.0,
          "cooling coefficient must be >= 0");
  require(std::isfinite(smoke_point_c), "smoke point must be finite");
  require(std::isfinite(ambient_c), "ambient temperature must be finite");
  require(smoke_point_c > ambient_c, "smoke point must be above ambient");
  require(tick_millis > 0, "tick must be positive");
}

ApplianceState ApplianceState::initial(const SimConfig& config) {
  ApplianceState s;
  s.ambient_c = config.ambient_c;
  s.food_temp_c = config.ambient_c;
  return s;
}

std::string_view action_name(const Action& a) noexcept {
  static constexpr std::string_view names[] = {"OpenDoor", "CloseDoor", "PlaceLoad",
                                               "RemoveLoad", "Confirm", "ScanBarcode"};
  return names[a.index()];
}

ApplianceState apply_effect(ApplianceState s, const engine::Effect& effect) {
  namespace fx = engine::effect;
  auto refuse = [&s](const char* what) {
    s.faults.push_back({s.clock_millis, std::string(what) + " refused: door is open"});
  };
  if (const auto* m = std::get_if<fx::SetMagnetron>(&effect)) {
    if (m->on && s.door_open) {
      refuse("magnetron on");
      s.magnetron_on = false;
    } else {
      s.magnetron_on = m->on;
    }
  } else if (const auto* c = std::get_if<fx::SetCarousel>(&effect)) {
    if (c->on && s.door_open) {
      refuse("carousel on");
      s.carousel_on = false;
    } else {
      s.carousel_on = c->on;
    }
  } else if (const auto* l = std::get_if<fx::SetLight>(&effect)) {
    s.light_on = l->on;
  }
  return s;
}

SimStep tick(const ApplianceState& state, const SimConfig& config, std::int64_t dt_millis) {
  if (dt_millis <= 0) throw std::invalid_argument("tick dtMillis must be positive");
  SimStep out{state, {}};
  auto& s = out.state;
  s.clock_millis += dt_millis;

  if (s.load_grams > 0) {
    const double dt = static_cast<double>(dt_millis) / 1000.0;
    const double before = s.food_temp_c;
    double heat = 0.0;
    if (s.magnetron_on) {
      const double mass_kg = static_cast<double>(s.load_grams) / 1000.0;
      heat = static_cast<double>(s.power_watts) * config.efficiency * dt /
             (mass_kg * config.specific_heat_j_per_kg_k);
    }
    // Decay factor clamped at 1 so a long step lands on ambient rather than
    // overshooting past it.
    const double decay = std::min(config.cooling_coeff_per_sec * dt, 1.0);
    s.food_temp_c = before + heat - decay * (before - s.ambient_c);

    if (!s.smoke_active && before < config.smoke_point_c && s.food_temp_c >= config.smoke_point_c) {
      s.smoke_active = true;
      out.events.emplace_back(engine::event::SmokeDetected{});
    }
  }
  out.events.emplace_back(engine::event::Tick{dt_millis});
  return out;
}

SimStep user_action(const ApplianceState& state, const Action& act) {
  SimStep out{state, {}};
  auto& s = out.state;
  std::visit(
      [&](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, action::OpenDoor>) {
          if (s.door_open) throw PreconditionViolated("the door is already open");
          s.door_open = true;
          s.magnetron_on = false;
          s.carousel_on = false;
          out.events.emplace_back(engine::event::DoorOpen{});
        } else if constexpr (std::is_same_v<A, action::CloseDoor>) {
          if (!s.door_open) throw PreconditionViolated("the door is already closed");
          s.door_open = false;
          out.events.emplace_back(engine::event::DoorClosed{});
        } else if constexpr (std::is_same_v<A, action::PlaceLoad>) {
          if (!s.door_open) throw PreconditionViolated("food can only be placed with the door open");
          if (s.load_grams > 0) throw PreconditionViolated("there is already food inside");
          if (a.grams <= 0) throw PreconditionViolated("load must weigh at least 1 g");
          if (!std::isfinite(a.initial_temp_c)) throw PreconditionViolated("load temperature must be finite");
          s.load_grams = a.grams;
          s.food_temp_c = a.initial_temp_c;
          out.events.emplace_back(engine::event::WeightChange{a.grams});
        } else if constexpr (std::is_same_v<A, action::RemoveLoad>) {
          if (!s.door_open) throw PreconditionViolated("food can only be removed with the door open");
          if (s.load_grams == 0) throw PreconditionViolated("there is no food inside");
          const auto grams = s.load_grams;
          s.load_grams = 0;
          s.food_temp_c = s.ambient_c;
          s.smoke_active = false;
          out.events.emplace_back(engine::event::WeightChange{-grams});
        } else if constexpr (std::is_same_v<A, action::Confirm>) {
          out.events.emplace_back(engine::event::UserConfirm{});
        } else if constexpr (std::is_same_v<A, action::ScanBarcode>) {
          try {
            dsl::validate_barcode(a.digits);
          } catch (const dsl::BarcodeError& e) {
            throw PreconditionViolated(std::string("unreadable barcode: ") + e.what());
          }
        }
      },
      act);
  return out;
}

}  // namespace csa::sim
