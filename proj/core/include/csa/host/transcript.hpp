#pragma once

// Record/replay of host sessions.
//
// A transcript is line-delimited JSON. Line 1 is a header carrying the full
// resource, the chosen set id and both configs, so a transcript replays
// without any other file:
//   {"csaTranscript":1,"setId":"..","engine":{..},"sim":{..},"resource":{..}}
// Every further line is one host input and its outcome:
//   {"t":0,"input":{"action":"Start"},"phase":{..},"effects":[..]}
//   {"t":1000,"input":{"action":"OpenDoor"},"phase":{..},"effects":[..]}
//   {"t":1000,"input":{"action":"PlaceLoad",..},"error":"PreconditionViolated: .."}

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "csa/dsl/types.hpp"
#include "csa/host/session_host.hpp"

namespace csa::host {

std::string format_header(const dsl::ProductResource& resource, const std::string& set_id,
                          const HostConfig& config);
std::string format_record(const StepRecord& record);
std::string format_error(std::int64_t t_millis, const Input& in, const std::string& message);

/// One line of an action script: {"t":120000,"action":"OpenDoor"}. The host
/// clock is advanced to `t` before the action is applied.
struct ScriptLine {
  std::int64_t t_millis = 0;
  Input input;
};

std::string format_script_line(const ScriptLine& line);
/// Throws std::invalid_argument naming the 1-based line on malformed input
/// or decreasing timestamps.
std::vector<ScriptLine> parse_action_script(std::string_view text);

enum class ScriptOutcome { Completed, PreconditionViolated };

/// Runs a script against `host`, passing every transcript line (records and
/// a terminating error line, if any) to `sink`. Stops at the first
/// precondition violation.
ScriptOutcome run_script(SessionHost& host, const std::vector<ScriptLine>& script,
                         const std::function<void(const std::string&)>& sink);

/// Header + start record + every script line: the complete transcript text.
struct Recording {
  std::string transcript;
  ScriptOutcome outcome = ScriptOutcome::Completed;
  SessionHost host;
};
Recording record_session(const dsl::ProductResource& resource, const std::string& set_id,
                         const std::vector<ScriptLine>& script, const HostConfig& config = {});

struct ReplayResult {
  bool ok = true;
  std::size_t line = 0;  // 1-based line of the first divergence
  std::string expected;
  std::string actual;
  std::string message;
};

/// Re-executes every input and compares each produced line byte-for-byte.
/// An empty transcript replays trivially.
ReplayResult replay_transcript(std::string_view transcript);

}  // namespace csa::host
