#include "csa/dsl/lint.hpp"

#include <algorithm>

#include "csa/dsl/json.hpp"

namespace csa::dsl {

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::Error ? "error" : "warning";
}

bool LintReport::has_errors() const noexcept { return error_count() > 0; }

std::size_t LintReport::error_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(), [](const auto& d) { return d.severity == Severity::Error; }));
}

std::size_t LintReport::warning_count() const noexcept { return diagnostics.size() - error_count(); }

std::string LintReport::to_json() const {
  ordered_json list = ordered_json::array();
  for (const auto& d : diagnostics) {
    ordered_json j;
    j["severity"] = to_string(d.severity);
    j["rule"] = d.rule;
    j["path"] = d.path;
    j["message"] = d.message;
    list.push_back(std::move(j));
  }
  ordered_json root;
  root["diagnostics"] = std::move(list);
  return root.dump();
}

std::string LintReport::to_text() const {
  std::string out;
  for (const auto& d : diagnostics) {
    out += std::string(to_string(d.severity)) + " " + d.rule + " " + d.path + " " + d.message + "\n";
  }
  return out;
}

namespace {

enum class Door { Closed, Open, Unknown };

class Linter {
 public:
  explicit Linter(LintReport& report) : report_(report) {}

  void error(std::string rule, std::string path, std::string message) {
    report_.diagnostics.push_back({Severity::Error, std::move(rule), std::move(path), std::move(message)});
  }
  void warning(std::string rule, std::string path, std::string message) {
    report_.diagnostics.push_back({Severity::Warning, std::move(rule), std::move(path), std::move(message)});
  }

  void media_kind(const std::optional<MediaRef>& ref, MediaKind expected, const std::string& path) {
    if (ref && ref->kind != expected) {
      error("L5", path + "/kind",
            "field expects " + std::string(to_string(expected)) + " media but references " +
                std::string(to_string(ref->kind)));
    }
  }

  void set(const CookingInstructionSet& s, const std::string& base) {
    Door door = Door::Closed;
    bool food_placed = false;
    bool first_heat_seen = false;

    for (std::size_t k = 0; k < s.instructions.size(); ++k) {
      const std::string path = base + "/instructions/" + std::to_string(k);

      if (const auto* u = std::get_if<UserInstruction>(&s.instructions[k])) {
        media_kind(u->image, MediaKind::Image, path + "/image");
        media_kind(u->audio, MediaKind::Audio, path + "/audio");
        media_kind(u->video, MediaKind::Video, path + "/video");
        switch (u->until.kind) {
          case TransitionKind::DoorOpen: door = Door::Open; break;
          case TransitionKind::DoorClosed: door = Door::Closed; break;
          case TransitionKind::WeightChange:
            // Weight can only change through an open door.
            if (door == Door::Closed) door = Door::Unknown;
            if (u->until.min_delta_grams > 0) food_placed = true;
            break;
          case TransitionKind::TimerExpired:
            if (u->until.duration_seconds > kMaxDurationSeconds) {
              error("L3", path + "/until/durationSeconds",
                    "timer longer than " + std::to_string(kMaxDurationSeconds) + " s");
            }
            break;
          case TransitionKind::UserConfirm: break;
        }
        continue;
      }

      const auto& d = std::get<DeviceInstruction>(s.instructions[k]);
      if (door == Door::Open) {
        error("L1", path, "heating step follows a step that leaves the door open");
      } else if (door == Door::Unknown) {
        warning("L1", path, "door state before this heating step is not established by a DoorClosed step");
      }
      if (!first_heat_seen && !food_placed) {
        warning("L2", path, "no food-placement (WeightChange) step precedes the first heating step");
      }
      first_heat_seen = true;

      if (d.power_watts < kMinPowerWatts || d.power_watts > kMaxPowerWatts) {
        error("L3", path + "/powerWatts",
              "power must be within [" + std::to_string(kMinPowerWatts) + ", " +
                  std::to_string(kMaxPowerWatts) + "] W");
      }
      if (d.duration_seconds < kMinDurationSeconds || d.duration_seconds > kMaxDurationSeconds) {
        error("L3", path + "/durationSeconds",
              "duration must be within [" + std::to_string(kMinDurationSeconds) + ", " +
                  std::to_string(kMaxDurationSeconds) + "] s");
      }
      if (!d.activations.magnetron) {
        error("L6", path + "/activations/magnetron", "a heating step must switch the magnetron on");
      }
      if (!d.activations.light) {
        error("L7", path + "/activations/light", "the light stays on while heating");
      }
    }
  }

 private:
  LintReport& report_;
};

}  // namespace

LintReport lint_set(const CookingInstructionSet& set, std::string_view path) {
  LintReport report;
  Linter(report).set(set, std::string(path));
  return report;
}

LintReport lint(const ProductResource& resource) {
  LintReport report;
  Linter linter(report);
  linter.media_kind(resource.product.image, MediaKind::Image, "/product/image");

  const auto& sets = resource.instruction_sets;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const std::string base = "/instructionSets/" + std::to_string(j);
    for (std::size_t earlier = 0; earlier < j; ++earlier) {
      if (sets[earlier].id == sets[j].id) {
        linter.error("L4", base + "/id",
                     "set id \"" + sets[j].id + "\" already used by /instructionSets/" + std::to_string(earlier));
        break;
      }
    }
    for (std::size_t earlier = 0; earlier < j; ++earlier) {
      if (sets[earlier].ability_level == sets[j].ability_level) {
        linter.error("L4", base + "/abilityLevel",
                     "ability level " + std::to_string(sets[j].ability_level) +
                         " already used by /instructionSets/" + std::to_string(earlier));
        break;
      }
    }
    linter.set(sets[j], base);
  }
  return report;
}

}  // namespace csa::dsl
