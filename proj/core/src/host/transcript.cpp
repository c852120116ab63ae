#include "csa/host/transcript.hpp"

#include <algorithm>
#include <stdexcept>

#include "csa/dsl/document.hpp"
#include "csa/dsl/json.hpp"
#include "csa/engine/codec.hpp"
#include "csa/sim/codec.hpp"

namespace csa::host {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json engine_config_json(const engine::EngineConfig& c) {
  ordered_json j;
  j["doorLeftOpenTimeoutMillis"] = c.door_left_open_timeout_millis;
  j["smokeClip"] = dsl::to_json(c.smoke_clip);
  return j;
}

engine::EngineConfig engine_config_from_json(const json& j) {
  engine::EngineConfig c;
  c.door_left_open_timeout_millis = j.at("doorLeftOpenTimeoutMillis").get<std::int64_t>();
  c.smoke_clip = dsl::media_ref_from_json(j.at("smokeClip"), "/engine/smokeClip");
  return c;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  return lines;
}

}  // namespace

std::string format_header(const dsl::ProductResource& resource, const std::string& set_id,
                          const HostConfig& config) {
  ordered_json j;
  j["csaTranscript"] = 1;
  j["setId"] = set_id;
  j["engine"] = engine_config_json(config.engine);
  j["sim"] = sim::to_json(config.sim);
  j["resource"] = dsl::to_json(resource);
  return j.dump();
}

std::string format_record(const StepRecord& record) {
  ordered_json j;
  j["t"] = record.t_millis;
  if (record.input) {
    j["input"] = to_json(*record.input);
  } else {
    j["input"] = ordered_json{{"action", "Start"}};
  }
  j["phase"] = engine::to_json(record.phase);
  j["effects"] = engine::effects_to_json(record.effects);
  return j.dump();
}

std::string format_error(std::int64_t t_millis, const Input& in, const std::string& message) {
  ordered_json j;
  j["t"] = t_millis;
  j["input"] = to_json(in);
  j["error"] = "PreconditionViolated: " + message;
  return j.dump();
}

std::string format_script_line(const ScriptLine& line) {
  ordered_json j;
  j["t"] = line.t_millis;
  const auto fields = to_json(line.input);
  for (auto& [k, v] : fields.items()) j[k] = v;
  return j.dump();
}

std::vector<ScriptLine> parse_action_script(std::string_view text) {
  std::vector<ScriptLine> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument(e.what());
      }
      if (!j.is_object() || !j.contains("t") || !j["t"].is_number_integer()) {
        throw std::invalid_argument("script line needs an integer \"t\"");
      }
      ScriptLine s{j["t"].get<std::int64_t>(), input_from_json(j)};
      if (s.t_millis < 0) throw std::invalid_argument("timestamp must be non-negative");
      if (!out.empty() && s.t_millis < out.back().t_millis) throw std::invalid_argument("timestamp decreases");
      out.push_back(std::move(s));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("script line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

ScriptOutcome run_script(SessionHost& host, const std::vector<ScriptLine>& script,
                         const std::function<void(const std::string&)>& sink) {
  for (const auto& line : script) {
    if (line.t_millis > host.clock_millis()) {
      sink(format_record(host.apply(input::Advance{line.t_millis - host.clock_millis()})));
    }
    try {
      sink(format_record(host.apply(line.input)));
    } catch (const sim::PreconditionViolated& e) {
      sink(format_error(host.clock_millis(), line.input, e.what()));
      return ScriptOutcome::PreconditionViolated;
    }
  }
  return ScriptOutcome::Completed;
}

namespace {
const dsl::CookingInstructionSet& find_set(const dsl::ProductResource& resource, const std::string& id) {
  auto it = std::find_if(resource.instruction_sets.begin(), resource.instruction_sets.end(),
                         [&](const auto& s) { return s.id == id; });
  if (it == resource.instruction_sets.end()) throw std::invalid_argument("no instruction set \"" + id + "\"");
  return *it;
}
}  // namespace

Recording record_session(const dsl::ProductResource& resource, const std::string& set_id,
                         const std::vector<ScriptLine>& script, const HostConfig& config) {
  Recording rec{"", ScriptOutcome::Completed, SessionHost(find_set(resource, set_id), config)};
  auto sink = [&rec](const std::string& line) { rec.transcript += line + "\n"; };
  sink(format_header(resource, set_id, config));
  sink(format_record(rec.host.start_record()));
  rec.outcome = run_script(rec.host, script, sink);
  return rec;
}

ReplayResult replay_transcript(std::string_view transcript) {
  auto lines = split_lines(transcript);
  while (!lines.empty() && lines.back().find_first_not_of(" \t\r") == std::string_view::npos) lines.pop_back();
  if (lines.empty()) return {};

  auto fail = [](std::size_t line, std::string message, std::string expected = {}, std::string actual = {}) {
    return ReplayResult{false, line, std::move(expected), std::move(actual), std::move(message)};
  };

  std::optional<SessionHost> host;
  try {
    const auto header = json::parse(lines[0]);
    if (header.value("csaTranscript", 0) != 1) return fail(1, "not a version-1 transcript header");
    HostConfig config{sim::sim_config_from_json(header.at("sim")), engine_config_from_json(header.at("engine"))};
    const auto resource = dsl::resource_from_json(header.at("resource"));
    host.emplace(find_set(resource, header.at("setId").get<std::string>()), config);
  } catch (const std::exception& e) {
    return fail(1, std::string("bad header: ") + e.what());
  }

  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::string expected(lines[n]);
    std::string actual;
    try {
      const auto j = json::parse(expected);
      const auto& in = j.at("input");
      if (n == 1) {
        if (in.value("action", "") != "Start") return fail(n + 1, "second line must be the Start record");
        actual = format_record(host->start_record());
      } else {
        const Input input = input_from_json(in);
        try {
          actual = format_record(host->apply(input));
        } catch (const sim::PreconditionViolated& e) {
          actual = format_error(host->clock_millis(), input, e.what());
        }
      }
    } catch (const std::exception& e) {
      return fail(n + 1, std::string("malformed line: ") + e.what(), expected);
    }
    if (actual != expected) return fail(n + 1, "output diverges", expected, actual);
  }
  return {};
}

}  // namespace csa::host
