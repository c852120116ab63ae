#include "csa/host/session_host.hpp"

#include <algorithm>

#include "csa/dsl/json.hpp"
#include "csa/engine/codec.hpp"
#include "csa/sim/codec.hpp"

namespace csa::host {

using nlohmann::json;
using nlohmann::ordered_json;

std::string input_name(const Input& in) {
  if (const auto* a = std::get_if<sim::Action>(&in)) return std::string(sim::action_name(*a));
  return std::holds_alternative<input::Abort>(in) ? "Abort" : "Advance";
}

ordered_json to_json(const Input& in) {
  if (const auto* a = std::get_if<sim::Action>(&in)) return sim::to_json(*a);
  ordered_json j;
  j["action"] = input_name(in);
  if (const auto* adv = std::get_if<input::Advance>(&in)) j["dtMillis"] = adv->dt_millis;
  return j;
}

Input input_from_json(const json& j) {
  if (!j.is_object() || !j.contains("action") || !j["action"].is_string()) {
    throw std::invalid_argument("input needs an \"action\" string");
  }
  const auto name = j["action"].get<std::string>();
  if (name == "Abort") return input::Abort{};
  if (name == "Advance") {
    if (!j.contains("dtMillis") || !j["dtMillis"].is_number_integer()) {
      throw std::invalid_argument("Advance needs an integer dtMillis");
    }
    return input::Advance{j["dtMillis"].get<std::int64_t>()};
  }
  return sim::action_from_json(j);
}

SessionHost::SessionHost(dsl::CookingInstructionSet set, HostConfig config)
    : config_(std::move(config)), appliance_(sim::ApplianceState::initial(config_.sim)) {
  config_.sim.validate();
  auto init = engine::init_session(std::move(set), config_.engine);
  engine_ = std::move(init.state);
  sync_power();
  for (const auto& e : init.effects) {
    appliance_ = sim::apply_effect(std::move(appliance_), e);
    if (const auto* show = std::get_if<engine::effect::ShowInstruction>(&e)) display_ = *show;
  }
  last_effects_ = init.effects;
  start_ = {0, std::nullopt, engine_.phase, std::move(init.effects)};
}

void SessionHost::sync_power() {
  appliance_.power_watts = 0;
  if (auto i = engine::phase_index(engine_.phase); i && engine::phase_remaining(engine_.phase)) {
    appliance_.power_watts = std::get<dsl::DeviceInstruction>(engine_.set().instructions[*i]).power_watts;
  }
}

void SessionHost::feed(const engine::Event& e, std::vector<engine::Effect>& out) {
  auto r = engine::step(engine_, e);
  engine_ = std::move(r.state);
  sync_power();
  for (auto& fx : r.effects) {
    appliance_ = sim::apply_effect(std::move(appliance_), fx);
    if (const auto* a = std::get_if<engine::effect::Alert>(&fx)) alerts_.push_back({appliance_.clock_millis, *a});
    if (const auto* show = std::get_if<engine::effect::ShowInstruction>(&fx)) display_ = *show;
    out.push_back(std::move(fx));
  }
}

// Ticks never overrun the end of a heating step or a user timer, so step
// boundaries land exactly on the virtual clock.
std::int64_t SessionHost::next_tick(std::int64_t remaining) const {
  std::int64_t d = std::min(remaining, config_.sim.tick_millis);
  if (const auto* h = std::get_if<engine::phase::Heating>(&engine_.phase)) {
    d = std::min(d, h->remaining_millis);
  } else if (auto until = engine::expected_transition(engine_);
             until && until->kind == dsl::TransitionKind::TimerExpired) {
    const std::int64_t left = until->duration_seconds * 1000 - engine_.elapsed_in_phase_millis;
    if (left > 0) d = std::min(d, left);
  }
  return std::max<std::int64_t>(d, 1);
}

StepRecord SessionHost::apply(const Input& in) {
  std::vector<engine::Effect> effects;
  if (const auto* action = std::get_if<sim::Action>(&in)) {
    auto result = sim::user_action(appliance_, *action);  // throws before any change
    appliance_ = std::move(result.state);
    for (const auto& ev : result.events) feed(ev, effects);
  } else if (std::holds_alternative<input::Abort>(in)) {
    feed(engine::event::Abort{}, effects);
  } else {
    const auto dt = std::get<input::Advance>(in).dt_millis;
    if (dt <= 0) throw std::invalid_argument("clock advance must be positive");
    std::int64_t remaining = dt;
    while (remaining > 0) {
      const auto d = next_tick(remaining);
      auto result = sim::tick(appliance_, config_.sim, d);
      appliance_ = std::move(result.state);
      for (const auto& ev : result.events) feed(ev, effects);
      remaining -= d;
    }
  }
  last_effects_ = effects;
  return {appliance_.clock_millis, in, engine_.phase, std::move(effects)};
}

ordered_json SessionHost::to_json() const {
  ordered_json j;
  j["phase"] = engine::phase_name(engine_.phase);
  auto index = engine::phase_index(engine_.phase);
  j["index"] = index ? ordered_json(*index) : ordered_json(nullptr);
  auto remaining = engine::phase_remaining(engine_.phase);
  j["remainingMillis"] = remaining ? ordered_json(*remaining) : ordered_json(nullptr);
  j["elapsedInPhaseMillis"] = engine_.elapsed_in_phase_millis;
  j["instructionCount"] = engine_.set().instructions.size();
  auto expected = engine::expected_transition(engine_);
  j["expected"] = expected ? dsl::to_json(*expected) : ordered_json(nullptr);
  j["terminal"] = engine::is_terminal(engine_);
  j["clockMillis"] = appliance_.clock_millis;

  ordered_json appliance = sim::to_json(appliance_);
  ordered_json faults = std::move(appliance["faults"]);
  appliance.erase("faults");
  j["appliance"] = std::move(appliance);

  if (display_) {
    ordered_json d;
    d["text"] = display_->text;
    d["media"] = ordered_json::array();
    for (const auto& m : display_->media) d["media"].push_back(dsl::to_json(m));
    j["display"] = std::move(d);
  } else {
    j["display"] = nullptr;
  }

  // Media the client has to fetch for the current screen, each once.
  ordered_json pending = ordered_json::array();
  auto want = [&pending](const dsl::MediaRef& m) {
    auto mj = dsl::to_json(m);
    if (std::find(pending.begin(), pending.end(), mj) == pending.end()) pending.push_back(std::move(mj));
  };
  for (const auto& fx : last_effects_) {
    if (const auto* show = std::get_if<engine::effect::ShowInstruction>(&fx)) {
      for (const auto& m : show->media) want(m);
    } else if (const auto* s = std::get_if<engine::effect::Suggest>(&fx)) {
      for (const auto& m : s->media) want(m);
    } else if (const auto* p = std::get_if<engine::effect::PlayAudio>(&fx)) {
      want(p->clip);
    }
  }
  j["pendingMedia"] = std::move(pending);

  ordered_json alerts = ordered_json::array();
  for (const auto& a : alerts_) {
    ordered_json aj;
    aj["t"] = a.t_millis;
    aj["kind"] = engine::to_string(a.alert.kind);
    aj["text"] = a.alert.text;
    alerts.push_back(std::move(aj));
  }
  j["alerts"] = std::move(alerts);
  j["faults"] = std::move(faults);
  j["effects"] = engine::effects_to_json(last_effects_);
  return j;
}

}  // namespace csa::host
