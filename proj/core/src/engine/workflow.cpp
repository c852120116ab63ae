#include "csa/engine/workflow.hpp"

#include <algorithm>
#include <cstdlib>

namespace csa::engine {

using dsl::DeviceInstruction;
using dsl::TransitionKind;
using dsl::UserInstruction;

std::string_view phase_name(const Phase& p) noexcept {
  static constexpr std::string_view names[] = {"AwaitingUser", "Heating", "HeatingPaused",
                                               "SmokeHold",    "Complete", "Aborted"};
  return names[p.index()];
}

std::optional<std::size_t> phase_index(const Phase& p) noexcept {
  return std::visit(
      [](const auto& ph) -> std::optional<std::size_t> {
        if constexpr (requires { ph.index; }) {
          return ph.index;
        } else {
          return std::nullopt;
        }
      },
      p);
}

std::optional<std::int64_t> phase_remaining(const Phase& p) noexcept {
  if (const auto* h = std::get_if<phase::Heating>(&p)) return h->remaining_millis;
  if (const auto* h = std::get_if<phase::HeatingPaused>(&p)) return h->remaining_millis;
  return std::nullopt;
}

LintDirty::LintDirty(dsl::LintReport report)
    : std::invalid_argument("instruction set has lint errors:\n" + report.to_text()),
      report_(std::move(report)) {}

namespace {

constexpr std::string_view kHeatingWait = "The food is heating. Please wait.";
constexpr std::string_view kCloseDoor = "Please close the door to continue heating.";
constexpr std::string_view kDoorLeftOpen = "The door has been left open.";
constexpr std::string_view kSmoke = "Smoke detected. Heating has stopped. Please ask someone for help.";
constexpr std::string_view kAborted = "Cooking has been stopped.";

std::string heating_caption(const DeviceInstruction& d) {
  return "Heating at " + std::to_string(d.power_watts) + " W for " + std::to_string(d.duration_seconds) + " s";
}

// Builds one step. Effects are collected in emission order and partitioned
// at the end so actuator commands always precede media.
class Transition {
 public:
  explicit Transition(const SessionState& from) : state_(from) {}

  const dsl::Instruction& instruction(std::size_t i) const { return state_.set().instructions.at(i); }

  void emit(Effect e) { effects_.push_back(std::move(e)); }

  void go(Phase p) {
    state_.phase = std::move(p);
    state_.elapsed_in_phase_millis = 0;
  }

  void enter(std::size_t index) {
    const auto& instructions = state_.set().instructions;
    if (index >= instructions.size()) {
      go(phase::Complete{});
      emit(effect::SessionComplete{});
      return;
    }
    if (const auto* u = std::get_if<UserInstruction>(&instructions[index])) {
      go(phase::AwaitingUser{index});
      emit(effect::SetLight{true});
      emit(effect::ShowInstruction{u->text, u->media()});
      if (u->audio) emit(effect::PlayAudio{*u->audio});
      return;
    }
    const auto& d = std::get<DeviceInstruction>(instructions[index]);
    const std::int64_t total = d.duration_seconds * 1000;
    if (state_.door_open) {
      go(phase::HeatingPaused{index, total});
      emit(effect::SetMagnetron{false});
      emit(effect::SetCarousel{false});
      emit(effect::SetLight{true});
      emit(effect::Suggest{std::string(kCloseDoor), {}});
      return;
    }
    go(phase::Heating{index, total});
    activate(d);
    emit(effect::ShowInstruction{heating_caption(d), {}});
  }

  void activate(const DeviceInstruction& d) {
    emit(effect::SetMagnetron{d.activations.magnetron});
    emit(effect::SetCarousel{d.activations.carousel});
    emit(effect::SetLight{d.activations.light});
  }

  void stop_heating() {
    emit(effect::SetMagnetron{false});
    emit(effect::SetCarousel{false});
  }

  void smoke_alert() {
    stop_heating();
    emit(effect::Alert{AlertKind::Smoke, std::string(kSmoke)});
    emit(effect::PlayAudio{state_.workflow->config.smoke_clip});
  }

  void smoke_hold(std::size_t index) {
    go(phase::SmokeHold{index});
    smoke_alert();
  }

  void abort() {
    go(phase::Aborted{});
    stop_heating();
    emit(effect::Alert{AlertKind::Aborted, std::string(kAborted)});
  }

  void door_opened() {
    state_.door_open = true;
    emit(effect::SetLight{true});
  }

  SessionState& state() { return state_; }

  StepResult finish() {
    std::stable_partition(effects_.begin(), effects_.end(), [](const Effect& e) { return is_actuator(e); });
    return {std::move(state_), std::move(effects_)};
  }

 private:
  SessionState state_;
  std::vector<Effect> effects_;
};

bool weight_matches(const dsl::TransitionSpec& spec, std::int64_t delta) {
  if ((spec.min_delta_grams > 0) != (delta > 0)) return false;
  return std::llabs(delta) >= std::llabs(spec.min_delta_grams);
}

void awaiting_user(Transition& t, phase::AwaitingUser ph, const Event& ev) {
  const auto& u = std::get<UserInstruction>(t.instruction(ph.index));
  const auto kind = u.until.kind;
  auto advance = [&] { t.enter(ph.index + 1); };
  auto suggest = [&] { t.emit(effect::Suggest{u.text, u.media()}); };

  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, event::DoorOpen>) {
          t.door_opened();
          if (kind == TransitionKind::DoorOpen) advance();
        } else if constexpr (std::is_same_v<E, event::DoorClosed>) {
          t.state().door_open = false;
          if (kind == TransitionKind::DoorClosed) advance();
        } else if constexpr (std::is_same_v<E, event::WeightChange>) {
          if (kind == TransitionKind::WeightChange && weight_matches(u.until, e.delta_grams)) {
            advance();
          } else {
            suggest();
          }
        } else if constexpr (std::is_same_v<E, event::UserConfirm>) {
          if (kind == TransitionKind::UserConfirm) {
            advance();
          } else {
            suggest();
          }
        } else if constexpr (std::is_same_v<E, event::Tick>) {
          t.state().elapsed_in_phase_millis += e.dt_millis;
          if (kind == TransitionKind::TimerExpired &&
              t.state().elapsed_in_phase_millis >= u.until.duration_seconds * 1000) {
            advance();
          }
        } else if constexpr (std::is_same_v<E, event::SmokeDetected>) {
          t.smoke_hold(ph.index);
        } else if constexpr (std::is_same_v<E, event::Abort>) {
          t.abort();
        }
      },
      ev);
}

void heating(Transition& t, phase::Heating ph, const Event& ev) {
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, event::Tick>) {
          const std::int64_t left = ph.remaining_millis - e.dt_millis;
          if (left <= 0) {
            t.stop_heating();
            t.enter(ph.index + 1);
          } else {
            t.state().phase = phase::Heating{ph.index, left};
            t.state().elapsed_in_phase_millis += e.dt_millis;
          }
        } else if constexpr (std::is_same_v<E, event::DoorOpen>) {
          t.go(phase::HeatingPaused{ph.index, ph.remaining_millis});
          t.state().door_open = true;
          t.stop_heating();
          t.emit(effect::SetLight{true});
        } else if constexpr (std::is_same_v<E, event::DoorClosed>) {
          t.state().door_open = false;
        } else if constexpr (std::is_same_v<E, event::SmokeDetected>) {
          t.smoke_hold(ph.index);
        } else if constexpr (std::is_same_v<E, event::Abort>) {
          t.abort();
        } else {
          t.emit(effect::Suggest{std::string(kHeatingWait), {}});
        }
      },
      ev);
}

void heating_paused(Transition& t, phase::HeatingPaused ph, const Event& ev) {
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, event::DoorClosed>) {
          t.state().door_open = false;
          t.go(phase::Heating{ph.index, ph.remaining_millis});
          const auto& d = std::get<DeviceInstruction>(t.instruction(ph.index));
          t.activate(d);
          t.emit(effect::ShowInstruction{heating_caption(d), {}});
        } else if constexpr (std::is_same_v<E, event::DoorOpen>) {
          t.door_opened();
        } else if constexpr (std::is_same_v<E, event::Tick>) {
          const std::int64_t timeout = t.state().workflow->config.door_left_open_timeout_millis;
          const std::int64_t before = t.state().elapsed_in_phase_millis;
          const std::int64_t after = before + e.dt_millis;
          t.state().elapsed_in_phase_millis = after;
          if (timeout > 0 && after / timeout > before / timeout) {
            t.emit(effect::Alert{AlertKind::DoorLeftOpen, std::string(kDoorLeftOpen)});
            t.emit(effect::Suggest{std::string(kCloseDoor), {}});
          }
        } else if constexpr (std::is_same_v<E, event::SmokeDetected>) {
          t.smoke_hold(ph.index);
        } else if constexpr (std::is_same_v<E, event::Abort>) {
          t.abort();
        } else {
          t.emit(effect::Suggest{std::string(kCloseDoor), {}});
        }
      },
      ev);
}

void smoke_hold(Transition& t, phase::SmokeHold, const Event& ev) {
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, event::DoorOpen>) {
          t.door_opened();
        } else if constexpr (std::is_same_v<E, event::DoorClosed>) {
          t.state().door_open = false;
        } else if constexpr (std::is_same_v<E, event::SmokeDetected>) {
          t.smoke_alert();
        } else if constexpr (std::is_same_v<E, event::Abort>) {
          t.abort();
        } else if constexpr (std::is_same_v<E, event::Tick>) {
          t.state().elapsed_in_phase_millis += e.dt_millis;
        }
      },
      ev);
}

// Complete and Aborted absorb everything; the door still drives the light,
// and smoke is still reported.
void terminal(Transition& t, const Event& ev) {
  if (std::holds_alternative<event::DoorOpen>(ev)) {
    t.door_opened();
  } else if (std::holds_alternative<event::DoorClosed>(ev)) {
    t.state().door_open = false;
    t.emit(effect::SetLight{false});
  } else if (std::holds_alternative<event::SmokeDetected>(ev)) {
    t.smoke_alert();
  }
}

}  // namespace

StepResult init_session(dsl::CookingInstructionSet set, EngineConfig config) {
  auto report = dsl::lint_set(set);
  if (report.has_errors()) throw LintDirty(std::move(report));
  if (set.instructions.empty()) throw std::invalid_argument("instruction set is empty");

  SessionState initial{phase::AwaitingUser{0}, false, 0,
                       std::make_shared<const Workflow>(Workflow{std::move(set), std::move(config)})};
  Transition t(initial);
  t.enter(0);
  return t.finish();
}

StepResult step(const SessionState& state, const Event& ev) {
  check_event(ev);
  Transition t(state);
  std::visit(
      [&](const auto& ph) {
        using P = std::decay_t<decltype(ph)>;
        if constexpr (std::is_same_v<P, phase::AwaitingUser>) {
          awaiting_user(t, ph, ev);
        } else if constexpr (std::is_same_v<P, phase::Heating>) {
          heating(t, ph, ev);
        } else if constexpr (std::is_same_v<P, phase::HeatingPaused>) {
          heating_paused(t, ph, ev);
        } else if constexpr (std::is_same_v<P, phase::SmokeHold>) {
          smoke_hold(t, ph, ev);
        } else {
          terminal(t, ev);
        }
      },
      state.phase);
  return t.finish();
}

std::optional<dsl::TransitionSpec> expected_transition(const SessionState& state) {
  if (const auto* a = std::get_if<phase::AwaitingUser>(&state.phase)) {
    return std::get<UserInstruction>(state.set().instructions.at(a->index)).until;
  }
  return std::nullopt;
}

bool is_terminal(const SessionState& state) noexcept {
  return std::holds_alternative<phase::Complete>(state.phase) ||
         std::holds_alternative<phase::Aborted>(state.phase);
}

}  // namespace csa::engine
