#include "scripts.hpp"

#include <cstdlib>

namespace csa::testkit {

using dsl::TransitionKind;

std::vector<engine::TimedEvent> happy_path_events(const dsl::CookingInstructionSet& set) {
  std::vector<engine::TimedEvent> out;
  std::int64_t t = 0;
  auto emit = [&](engine::Event e, std::int64_t dt = 1000) {
    out.push_back({t, std::move(e)});
    t += dt;
  };
  bool door_open = false;
  for (const auto& instr : set.instructions) {
    if (const auto* d = std::get_if<dsl::DeviceInstruction>(&instr)) {
      if (door_open) {
        emit(engine::event::DoorClosed{});
        door_open = false;
      }
      emit(engine::event::Tick{d->duration_seconds * 1000}, d->duration_seconds * 1000);
      continue;
    }
    const auto& until = std::get<dsl::UserInstruction>(instr).until;
    switch (until.kind) {
      case TransitionKind::DoorOpen: emit(engine::event::DoorOpen{}); door_open = true; break;
      case TransitionKind::DoorClosed: emit(engine::event::DoorClosed{}); door_open = false; break;
      case TransitionKind::WeightChange: emit(engine::event::WeightChange{until.min_delta_grams}); break;
      case TransitionKind::UserConfirm: emit(engine::event::UserConfirm{}); break;
      case TransitionKind::TimerExpired:
        emit(engine::event::Tick{until.duration_seconds * 1000}, until.duration_seconds * 1000);
        break;
    }
  }
  return out;
}

std::vector<host::ScriptLine> happy_path_script(const dsl::CookingInstructionSet& set) {
  using namespace sim::action;
  std::vector<host::ScriptLine> out;
  // Actions take no virtual time, so every wait lands entirely inside the
  // step it belongs to.
  std::int64_t t = 0;
  bool door_open = false;
  std::int64_t load = 0;
  auto act = [&](host::Input in) { out.push_back({t, std::move(in)}); };
  auto open = [&] { act(sim::Action{OpenDoor{}}); door_open = true; };
  auto close = [&] { act(sim::Action{CloseDoor{}}); door_open = false; };
  auto place = [&](std::int64_t grams) {
    load = std::max<std::int64_t>(grams, 400);
    act(sim::Action{PlaceLoad{load, 5.0}});
  };
  auto remove = [&] { act(sim::Action{RemoveLoad{}}); load = 0; };
  auto wait = [&](std::int64_t seconds) {
    out.push_back({t, host::input::Advance{seconds * 1000}});
    t += seconds * 1000;
  };

  for (const auto& instr : set.instructions) {
    if (const auto* d = std::get_if<dsl::DeviceInstruction>(&instr)) {
      if (door_open) close();
      wait(d->duration_seconds);
      continue;
    }
    const auto& until = std::get<dsl::UserInstruction>(instr).until;
    switch (until.kind) {
      case TransitionKind::DoorOpen:
        if (door_open) close();
        open();
        break;
      case TransitionKind::DoorClosed:
        if (!door_open) open();
        close();
        break;
      case TransitionKind::WeightChange: {
        if (!door_open) open();
        const auto need = std::llabs(until.min_delta_grams);
        if (until.min_delta_grams > 0) {
          if (load > 0) remove();
          place(need);
        } else {
          if (load < need) {
            if (load > 0) remove();
            place(need);
          }
          remove();
        }
        break;
      }
      case TransitionKind::UserConfirm: act(sim::Action{Confirm{}}); break;
      case TransitionKind::TimerExpired: wait(until.duration_seconds); break;
    }
  }
  return out;
}

long count_advances(const std::vector<engine::Phase>& phases, std::size_t instruction_count) {
  auto position = [&](const engine::Phase& p) -> long {
    if (std::holds_alternative<engine::phase::Complete>(p)) return static_cast<long>(instruction_count);
    if (auto idx = engine::phase_index(p)) return static_cast<long>(*idx);
    return -2;
  };
  if (phases.empty()) return 0;
  long advances = 0;
  long prev = position(phases.front());
  for (std::size_t i = 1; i < phases.size(); ++i) {
    const long cur = position(phases[i]);
    if (cur == prev) continue;
    if (cur != prev + 1) return -1;
    ++advances;
    prev = cur;
  }
  return advances;
}

}  // namespace csa::testkit
