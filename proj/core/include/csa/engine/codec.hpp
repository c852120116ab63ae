#pragma once

// Line-delimited JSON encodings for engine events, effects and phases.
// Every encoder emits a fixed key order so lines are byte-stable.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "csa/engine/events.hpp"
#include "csa/engine/workflow.hpp"

namespace csa::engine {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const Event& e);
ordered_json to_json(const Effect& e);
ordered_json to_json(const Phase& p);
ordered_json effects_to_json(const std::vector<Effect>& effects);

/// Throws std::invalid_argument on an unknown or malformed event.
Event event_from_json(const nlohmann::json& j);
Effect effect_from_json(const nlohmann::json& j);

struct TimedEvent {
  std::int64_t t_millis = 0;
  Event event;

  friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

/// {"t":1000,"event":"WeightChange","deltaGrams":400}
std::string format_event_line(const TimedEvent& e);
TimedEvent parse_event_line(std::string_view line);

/// Whole trace, one event per line. Throws std::invalid_argument (with the
/// 1-based line number) on malformed lines or decreasing timestamps.
std::vector<TimedEvent> parse_event_trace(std::string_view text);

/// Feeds a trace to a fresh session and returns one transcript line per
/// event: {"t":..,"event":{..},"phase":{..},"effects":[..]}. The first line
/// records the init step with "event":null.
std::vector<std::string> run_event_trace(const dsl::CookingInstructionSet& set,
                                         const std::vector<TimedEvent>& trace,
                                         const EngineConfig& config = {});

}  // namespace csa::engine
