#include "csa/dsl/document.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <set>

#include "csa/dsl/json.hpp"

namespace csa::dsl {

using nlohmann::json;

std::string_view to_string(ParseFault fault) noexcept {
  switch (fault) {
    case ParseFault::SyntaxError: return "SyntaxError";
    case ParseFault::SchemaError: return "SchemaError";
    case ParseFault::InvariantError: return "InvariantError";
  }
  return "?";
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw ParseError(ParseFault::SchemaError, path, path + ": " + message);
}

[[noreturn]] void invariant_error(const std::string& path, const std::string& message) {
  throw ParseError(ParseFault::InvariantError, path, path + ": " + message);
}

std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

// Strict object view: every member must be claimed by `allowed`, and the
// accessors check presence and JSON type.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) schema_error(path_.empty() ? "/" : path_, "expected an object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        schema_error(child(path_, key), "unknown field");
      }
    }
  }

  bool has(std::string_view key) const { return j_.contains(key); }

  const json& field(std::string_view key) const {
    auto it = j_.find(key);
    if (it == j_.end()) schema_error(child(path_, key), "missing field");
    return *it;
  }

  std::string string(std::string_view key) const {
    const auto& v = field(key);
    if (!v.is_string()) schema_error(child(path_, key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(std::string_view key) const {
    const auto& v = field(key);
    if (!v.is_boolean()) schema_error(child(path_, key), "expected a boolean");
    return v.get<bool>();
  }

  std::int64_t integer(std::string_view key) const {
    const auto& v = field(key);
    if (v.is_number_unsigned()) {
      if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        schema_error(child(path_, key), "integer out of range");
      }
      return static_cast<std::int64_t>(v.get<std::uint64_t>());
    }
    if (!v.is_number_integer()) schema_error(child(path_, key), "expected an integer");
    return v.get<std::int64_t>();
  }

  const json& array(std::string_view key) const {
    const auto& v = field(key);
    if (!v.is_array()) schema_error(child(path_, key), "expected an array");
    return v;
  }

  std::string path(std::string_view key) const { return child(path_, key); }

 private:
  const json& j_;
  std::string path_;
};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

UserInstruction user_from_json(const ObjectReader& r) {
  UserInstruction u;
  u.text = r.string("text");
  if (r.has("image")) u.image = media_ref_from_json(r.field("image"), r.path("image"));
  if (r.has("audio")) u.audio = media_ref_from_json(r.field("audio"), r.path("audio"));
  if (r.has("video")) u.video = media_ref_from_json(r.field("video"), r.path("video"));
  u.until = transition_from_json(r.field("until"), r.path("until"));
  if (blank(u.text) && !u.image && !u.audio && !u.video) {
    invariant_error(r.path("text"), "user instruction needs text or at least one media item");
  }
  return u;
}

DeviceInstruction device_from_json(const ObjectReader& r) {
  DeviceInstruction d;
  d.power_watts = r.integer("powerWatts");
  d.duration_seconds = r.integer("durationSeconds");
  ObjectReader a(r.field("activations"), r.path("activations"),
                 {"light", "carousel", "magnetron", "smokeAlarmAudible"});
  d.activations.light = a.boolean("light");
  d.activations.carousel = a.boolean("carousel");
  d.activations.magnetron = a.boolean("magnetron");
  d.activations.smoke_alarm_audible = a.boolean("smokeAlarmAudible");
  if (d.activations.smoke_alarm_audible) {
    invariant_error(a.path("smokeAlarmAudible"),
                    "the smoke alarm must never sound; smoke is reported by a calm message");
  }
  return d;
}

Instruction instruction_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto kind = j.find("kind");
  if (kind == j.end()) schema_error(child(path, "kind"), "missing field");
  if (!kind->is_string()) schema_error(child(path, "kind"), "expected a string");
  if (*kind == "user") {
    return user_from_json(ObjectReader(j, path, {"kind", "text", "image", "audio", "video", "until"}));
  }
  if (*kind == "device") {
    return device_from_json(
        ObjectReader(j, path, {"kind", "powerWatts", "durationSeconds", "activations"}));
  }
  schema_error(child(path, "kind"), "expected \"user\" or \"device\"");
}

CookingInstructionSet set_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path, {"id", "abilityLevel", "instructions"});
  CookingInstructionSet s;
  s.id = r.string("id");
  if (blank(s.id)) invariant_error(r.path("id"), "set id must not be empty");
  s.ability_level = r.integer("abilityLevel");
  if (s.ability_level < 1) invariant_error(r.path("abilityLevel"), "ability level must be >= 1");
  const auto& list = r.array("instructions");
  if (list.empty()) invariant_error(r.path("instructions"), "instruction list must not be empty");
  for (std::size_t i = 0; i < list.size(); ++i) {
    s.instructions.push_back(instruction_from_json(list[i], child(r.path("instructions"), i)));
  }
  return s;
}

// Duplicate keys are otherwise silently collapsed by the parser.
json parse_strict(std::string_view document) {
  std::vector<std::set<std::string>> open_objects;
  json::parser_callback_t guard = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: open_objects.emplace_back(); break;
      case json::parse_event_t::object_end: open_objects.pop_back(); break;
      case json::parse_event_t::key:
        if (!open_objects.back().insert(parsed.get<std::string>()).second) {
          throw ParseError(ParseFault::SyntaxError, "",
                           "duplicate key \"" + parsed.get<std::string>() + "\"");
        }
        break;
      default: break;
    }
    return true;
  };
  try {
    return json::parse(document.begin(), document.end(), guard);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseFault::SyntaxError, "", e.what());
  }
}

}  // namespace

MediaRef media_ref_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path, {"name", "kind"});
  MediaRef ref;
  ref.name = r.string("name");
  if (!is_safe_media_name(ref.name)) {
    invariant_error(r.path("name"), "media name must be a flat identifier of [A-Za-z0-9._-]");
  }
  auto kind = media_kind_from_string(r.string("kind"));
  if (!kind) schema_error(r.path("kind"), "expected one of image, audio, video, text");
  ref.kind = *kind;
  return ref;
}

TransitionSpec transition_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto ev = j.find("event");
  if (ev == j.end()) schema_error(child(path, "event"), "missing field");
  if (!ev->is_string()) schema_error(child(path, "event"), "expected a string");
  auto kind = transition_kind_from_string(ev->get<std::string>());
  if (!kind) {
    const std::string hint = *ev == "SmokeDetected" ? " (smoke is a safety signal, not a step)" : "";
    invariant_error(child(path, "event"), "not an authorable transition event" + hint);
  }
  TransitionSpec spec;
  spec.kind = *kind;
  switch (*kind) {
    case TransitionKind::WeightChange: {
      ObjectReader r(j, path, {"event", "minDeltaGrams"});
      spec.min_delta_grams = r.integer("minDeltaGrams");
      if (spec.min_delta_grams == 0) {
        invariant_error(r.path("minDeltaGrams"), "weight change threshold must be non-zero");
      }
      break;
    }
    case TransitionKind::TimerExpired: {
      ObjectReader r(j, path, {"event", "durationSeconds"});
      spec.duration_seconds = r.integer("durationSeconds");
      if (spec.duration_seconds < 1) {
        invariant_error(r.path("durationSeconds"), "timer duration must be >= 1 s");
      }
      break;
    }
    default: ObjectReader(j, path, {"event"}); break;
  }
  return spec;
}

ProductResource resource_from_json(const json& j) {
  ObjectReader root(j, "", {"product", "instructionSets"});
  ObjectReader p(root.field("product"), root.path("product"), {"barcode", "name", "category", "image"});

  std::optional<Barcode> barcode;
  try {
    barcode = validate_barcode(p.string("barcode"));
  } catch (const BarcodeError& e) {
    invariant_error(p.path("barcode"), e.what());
  }
  FoodProduct product{*barcode, p.string("name"), p.string("category"),
                      media_ref_from_json(p.field("image"), p.path("image"))};
  if (blank(product.name)) invariant_error(p.path("name"), "product name must not be empty");
  if (blank(product.category)) invariant_error(p.path("category"), "category must not be empty");

  ProductResource resource{std::move(product), {}};
  const auto& sets = root.array("instructionSets");
  if (sets.empty()) invariant_error(root.path("instructionSets"), "at least one instruction set is required");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    resource.instruction_sets.push_back(set_from_json(sets[i], child(root.path("instructionSets"), i)));
  }
  return resource;
}

ProductResource parse_resource(std::string_view document) {
  return resource_from_json(parse_strict(document));
}

ordered_json to_json(const MediaRef& ref) {
  ordered_json j;
  j["name"] = ref.name;
  j["kind"] = to_string(ref.kind);
  return j;
}

ordered_json to_json(const TransitionSpec& spec) {
  ordered_json j;
  j["event"] = to_string(spec.kind);
  if (spec.kind == TransitionKind::WeightChange) j["minDeltaGrams"] = spec.min_delta_grams;
  if (spec.kind == TransitionKind::TimerExpired) j["durationSeconds"] = spec.duration_seconds;
  return j;
}

namespace {

ordered_json to_json(const Instruction& instruction) {
  ordered_json j;
  if (const auto* u = std::get_if<UserInstruction>(&instruction)) {
    j["kind"] = "user";
    j["text"] = u->text;
    if (u->image) j["image"] = dsl::to_json(*u->image);
    if (u->audio) j["audio"] = dsl::to_json(*u->audio);
    if (u->video) j["video"] = dsl::to_json(*u->video);
    j["until"] = dsl::to_json(u->until);
  } else {
    const auto& d = std::get<DeviceInstruction>(instruction);
    j["kind"] = "device";
    j["powerWatts"] = d.power_watts;
    j["durationSeconds"] = d.duration_seconds;
    ordered_json a;
    a["light"] = d.activations.light;
    a["carousel"] = d.activations.carousel;
    a["magnetron"] = d.activations.magnetron;
    a["smokeAlarmAudible"] = d.activations.smoke_alarm_audible;
    j["activations"] = std::move(a);
  }
  return j;
}

}  // namespace

ordered_json to_json(const ProductResource& resource) {
  ordered_json product;
  product["barcode"] = resource.product.barcode.digits();
  product["name"] = resource.product.name;
  product["category"] = resource.product.category;
  product["image"] = to_json(resource.product.image);

  ordered_json sets = ordered_json::array();
  for (const auto& s : resource.instruction_sets) {
    ordered_json set;
    set["id"] = s.id;
    set["abilityLevel"] = s.ability_level;
    set["instructions"] = ordered_json::array();
    for (const auto& i : s.instructions) set["instructions"].push_back(to_json(i));
    sets.push_back(std::move(set));
  }

  ordered_json root;
  root["product"] = std::move(product);
  root["instructionSets"] = std::move(sets);
  return root;
}

std::string serialize_resource(const ProductResource& resource) {
  return to_json(resource).dump(2) + "\n";
}

std::string serialize_resource_compact(const ProductResource& resource) {
  return to_json(resource).dump();
}

}  // namespace csa::dsl
