#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "commands.hpp"
#include "csa/dsl/document.hpp"
#include "csa/dsl/lint.hpp"
#include "csa/dsl/select.hpp"
#include "csa/engine/workflow.hpp"
#include "csa/host/transcript.hpp"

namespace csa::cli {

namespace {

void render(const host::SessionHost& h, std::ostream& out) {
  const auto& s = h.engine();
  const auto& a = h.appliance();
  char temp[32];
  std::snprintf(temp, sizeof temp, "%.1f", a.food_temp_c);

  out << "[t=" << h.clock_millis() << "ms] " << engine::phase_name(s.phase);
  if (auto i = engine::phase_index(s.phase)) out << " #" << *i + 1 << "/" << s.set().instructions.size();
  if (auto r = engine::phase_remaining(s.phase)) out << " remaining " << *r << " ms";
  out << "\n  door=" << (a.door_open ? "open" : "closed") << " load=" << a.load_grams << "g food=" << temp
      << "C smoke=" << (a.smoke_active ? "YES" : "no") << " | magnetron=" << (a.magnetron_on ? "on" : "off")
      << " carousel=" << (a.carousel_on ? "on" : "off") << " light=" << (a.light_on ? "on" : "off") << "\n";
  if (h.display()) out << "  > " << h.display()->text << "\n";
  for (const auto& fx : h.last_effects()) {
    if (const auto* sg = std::get_if<engine::effect::Suggest>(&fx)) out << "  hint: " << sg->text << "\n";
    if (const auto* al = std::get_if<engine::effect::Alert>(&fx)) {
      out << "  ALERT " << engine::to_string(al->kind) << ": " << al->text << "\n";
    }
  }
  if (auto until = engine::expected_transition(s)) out << "  waiting for " << dsl::to_string(until->kind) << "\n";
}

std::optional<host::Input> key_input(char key) {
  switch (key) {
    case 'o': return sim::Action{sim::action::OpenDoor{}};
    case 'c': return sim::Action{sim::action::CloseDoor{}};
    case 'p': return sim::Action{sim::action::PlaceLoad{}};
    case 'r': return sim::Action{sim::action::RemoveLoad{}};
    case 'y': return sim::Action{sim::action::Confirm{}};
    case 'a': return host::input::Abort{};
    case 't': return host::input::Advance{1000};
    default: return std::nullopt;
  }
}

constexpr const char* kKeys = "keys: o=open c=close p=place r=remove y=confirm a=abort t=+1s q=quit";

}  // namespace

int cmd_run(const RunOptions& options, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto text = read_file(options.path);
  if (!text) {
    err << "csa run: cannot read " << options.path << "\n";
    return kUnreadable;
  }
  std::optional<dsl::ProductResource> parsed;
  try {
    parsed = dsl::parse_resource(*text);
  } catch (const dsl::ParseError& e) {
    err << "csa run: " << e.what() << "\n";
    return kUnreadable;
  }
  const dsl::ProductResource& resource = *parsed;
  const auto report = dsl::lint(resource);
  if (report.has_errors()) {
    err << report.to_text();
    return kFailed;
  }

  const dsl::CookingInstructionSet* set = nullptr;
  if (options.set_id) {
    for (const auto& s : resource.instruction_sets) {
      if (s.id == *options.set_id) set = &s;
    }
    if (!set) {
      err << "csa run: no instruction set \"" << *options.set_id << "\"\n";
      return kFailed;
    }
  } else {
    set = &dsl::select_instruction_set(resource, options.ability_level);
  }

  std::vector<host::ScriptLine> script;
  if (options.script) {
    const auto script_text = read_file(*options.script);
    if (!script_text) {
      err << "csa run: cannot read " << *options.script << "\n";
      return kUnreadable;
    }
    try {
      script = host::parse_action_script(*script_text);
    } catch (const std::invalid_argument& e) {
      err << "csa run: " << e.what() << "\n";
      return kUnreadable;
    }
  }

  host::SessionHost session(*set);
  std::string transcript = host::format_header(resource, set->id, session.config()) + "\n" +
                           host::format_record(session.start_record()) + "\n";
  auto sink = [&transcript](const std::string& line) { transcript += line + "\n"; };

  out << resource.product.name << " / set " << set->id << " (ability level " << set->ability_level << ")\n";
  render(session, out);

  int rc = kOk;
  if (options.interactive) {
    out << kKeys << "\n";
    std::string line;
    bool quit = false;
    while (!quit && std::getline(in, line)) {
      for (char key : line) {
        if (key == 'q') {
          quit = true;
          break;
        }
        auto input = key_input(key);
        if (!input) continue;
        try {
          sink(host::format_record(session.apply(*input)));
        } catch (const sim::PreconditionViolated& e) {
          sink(host::format_error(session.clock_millis(), *input, e.what()));
          out << "  cannot do that: " << e.what() << "\n";
          continue;
        }
        render(session, out);
      }
    }
  } else if (options.script) {
    if (host::run_script(session, script, sink) == host::ScriptOutcome::PreconditionViolated) {
      err << "csa run: script stopped: " << transcript.substr(transcript.rfind("{\"t\""));
      rc = kPrecondition;
    }
    render(session, out);
  }

  out << "final phase: " << engine::phase_name(session.engine().phase) << "\n";
  if (options.transcript) {
    std::ofstream file(*options.transcript, std::ios::binary | std::ios::trunc);
    file << transcript;
    if (!file) {
      err << "csa run: cannot write " << *options.transcript << "\n";
      return kFailed;
    }
  }
  return rc;
}

}  // namespace csa::cli
