#include "csa/engine/codec.hpp"

#include <stdexcept>

#include "csa/dsl/document.hpp"
#include "csa/dsl/json.hpp"

namespace csa::engine {

using nlohmann::json;

std::string_view event_name(const Event& e) noexcept {
  static constexpr std::string_view names[] = {"DoorOpen",    "DoorClosed", "WeightChange", "SmokeDetected",
                                               "UserConfirm", "Tick",       "Abort"};
  return names[e.index()];
}

void check_event(const Event& e) {
  if (const auto* w = std::get_if<event::WeightChange>(&e); w && w->delta_grams == 0) {
    throw std::invalid_argument("WeightChange delta must be non-zero");
  }
  if (const auto* t = std::get_if<event::Tick>(&e); t && t->dt_millis <= 0) {
    throw std::invalid_argument("Tick dtMillis must be positive");
  }
}

std::string_view to_string(AlertKind kind) noexcept {
  switch (kind) {
    case AlertKind::Smoke: return "Smoke";
    case AlertKind::DoorLeftOpen: return "DoorLeftOpen";
    case AlertKind::Aborted: return "Aborted";
  }
  return "?";
}

std::string_view effect_name(const Effect& e) noexcept {
  static constexpr std::string_view names[] = {"SetMagnetron", "SetCarousel", "SetLight", "ShowInstruction",
                                               "PlayAudio",    "Suggest",     "Alert",    "SessionComplete"};
  return names[e.index()];
}

namespace {

ordered_json media_list(const std::vector<dsl::MediaRef>& media) {
  ordered_json list = ordered_json::array();
  for (const auto& m : media) list.push_back(dsl::to_json(m));
  return list;
}

std::vector<dsl::MediaRef> media_list_from_json(const json& j) {
  std::vector<dsl::MediaRef> out;
  for (const auto& m : j.at("media")) out.push_back(dsl::media_ref_from_json(m, "/media"));
  return out;
}

std::int64_t int_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

ordered_json to_json(const Event& e) {
  ordered_json j;
  j["event"] = event_name(e);
  if (const auto* w = std::get_if<event::WeightChange>(&e)) j["deltaGrams"] = w->delta_grams;
  if (const auto* t = std::get_if<event::Tick>(&e)) j["dtMillis"] = t->dt_millis;
  return j;
}

Event event_from_json(const json& j) {
  try {
    const auto name = j.at("event").get<std::string>();
    Event e;
    if (name == "DoorOpen") e = event::DoorOpen{};
    else if (name == "DoorClosed") e = event::DoorClosed{};
    else if (name == "WeightChange") e = event::WeightChange{int_field(j, "deltaGrams")};
    else if (name == "SmokeDetected") e = event::SmokeDetected{};
    else if (name == "UserConfirm") e = event::UserConfirm{};
    else if (name == "Tick") e = event::Tick{int_field(j, "dtMillis")};
    else if (name == "Abort") e = event::Abort{};
    else throw std::invalid_argument("unknown event \"" + name + "\"");
    check_event(e);
    return e;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed event: ") + ex.what());
  }
}

ordered_json to_json(const Effect& e) {
  ordered_json j;
  j["effect"] = effect_name(e);
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, effect::SetMagnetron> || std::is_same_v<V, effect::SetCarousel> ||
                      std::is_same_v<V, effect::SetLight>) {
          j["on"] = v.on;
        } else if constexpr (std::is_same_v<V, effect::ShowInstruction> || std::is_same_v<V, effect::Suggest>) {
          j["text"] = v.text;
          j["media"] = media_list(v.media);
        } else if constexpr (std::is_same_v<V, effect::PlayAudio>) {
          j["clip"] = dsl::to_json(v.clip);
        } else if constexpr (std::is_same_v<V, effect::Alert>) {
          j["kind"] = to_string(v.kind);
          j["text"] = v.text;
        }
      },
      e);
  return j;
}

Effect effect_from_json(const json& j) {
  try {
    const auto name = j.at("effect").get<std::string>();
    if (name == "SetMagnetron") return effect::SetMagnetron{j.at("on").get<bool>()};
    if (name == "SetCarousel") return effect::SetCarousel{j.at("on").get<bool>()};
    if (name == "SetLight") return effect::SetLight{j.at("on").get<bool>()};
    if (name == "ShowInstruction") return effect::ShowInstruction{j.at("text").get<std::string>(), media_list_from_json(j)};
    if (name == "Suggest") return effect::Suggest{j.at("text").get<std::string>(), media_list_from_json(j)};
    if (name == "PlayAudio") return effect::PlayAudio{dsl::media_ref_from_json(j.at("clip"), "/clip")};
    if (name == "Alert") {
      const auto kind = j.at("kind").get<std::string>();
      for (auto k : {AlertKind::Smoke, AlertKind::DoorLeftOpen, AlertKind::Aborted}) {
        if (to_string(k) == kind) return effect::Alert{k, j.at("text").get<std::string>()};
      }
      throw std::invalid_argument("unknown alert kind \"" + kind + "\"");
    }
    if (name == "SessionComplete") return effect::SessionComplete{};
    throw std::invalid_argument("unknown effect \"" + name + "\"");
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed effect: ") + ex.what());
  } catch (const dsl::ParseError& ex) {
    throw std::invalid_argument(std::string("malformed effect: ") + ex.what());
  }
}

ordered_json to_json(const Phase& p) {
  ordered_json j;
  j["phase"] = phase_name(p);
  if (auto i = phase_index(p)) j["index"] = *i;
  if (auto r = phase_remaining(p)) j["remainingMillis"] = *r;
  return j;
}

ordered_json effects_to_json(const std::vector<Effect>& effects) {
  ordered_json list = ordered_json::array();
  for (const auto& e : effects) list.push_back(to_json(e));
  return list;
}

std::string format_event_line(const TimedEvent& e) {
  ordered_json j;
  j["t"] = e.t_millis;
  const auto fields = to_json(e.event);
  for (auto& [k, v] : fields.items()) j[k] = v;
  return j.dump();
}

TimedEvent parse_event_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& ex) {
    throw std::invalid_argument(std::string("malformed event line: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("t")) throw std::invalid_argument("event line needs a \"t\" timestamp");
  const auto t = int_field(j, "t");
  if (t < 0) throw std::invalid_argument("timestamp must be non-negative");
  return {t, event_from_json(j)};
}

std::vector<TimedEvent> parse_event_trace(std::string_view text) {
  std::vector<TimedEvent> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto e = parse_event_line(line);
      if (!out.empty() && e.t_millis < out.back().t_millis) {
        throw std::invalid_argument("timestamp decreases");
      }
      out.push_back(std::move(e));
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return out;
}

std::vector<std::string> run_event_trace(const dsl::CookingInstructionSet& set,
                                         const std::vector<TimedEvent>& trace, const EngineConfig& config) {
  std::vector<std::string> lines;
  auto line = [&](std::int64_t t, const Event* e, const StepResult& r) {
    ordered_json j;
    j["t"] = t;
    j["event"] = e ? to_json(*e) : ordered_json(nullptr);
    j["phase"] = to_json(r.state.phase);
    j["effects"] = effects_to_json(r.effects);
    lines.push_back(j.dump());
  };
  auto r = init_session(set, config);
  line(0, nullptr, r);
  for (const auto& te : trace) {
    r = step(r.state, te.event);
    line(te.t_millis, &te.event, r);
  }
  return lines;
}

}  // namespace csa::engine
