#include <gtest/gtest.h>

#include <json.hpp>

#include "corpus.hpp"
#include "csa/dsl/document.hpp"
#include "generators.hpp"

namespace csa::dsl {
namespace {

using json = nlohmann::ordered_json;

const std::string kSoup = testkit::read_text(testkit::samples_dir() / "products" / "tomato-soup.json");

ParseError parse_failure(const std::string& doc) {
  try {
    parse_resource(doc);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "document was accepted:\n" << doc;
  return ParseError(ParseFault::SyntaxError, "", "");
}

// Applies `edit` to the soup sample and returns the fault it triggers.
template <typename F>
ParseError mutated(F edit) {
  auto j = json::parse(kSoup);
  edit(j);
  return parse_failure(j.dump());
}

TEST(Document, CorpusIsCanonical) {
  const auto corpus = testkit::product_corpus();
  ASSERT_GE(corpus.size(), 5u);
  for (const auto& file : corpus) {
    const auto r = parse_resource(file.text);
    EXPECT_EQ(serialize_resource(r), file.text) << file.name;
  }
}

TEST(Document, SoupSampleFields) {
  const auto r = parse_resource(kSoup);
  EXPECT_EQ(r.product.barcode.digits(), "5000112000016");
  EXPECT_EQ(r.product.category, "soup");
  ASSERT_EQ(r.instruction_sets.size(), 2u);
  const auto& first = r.instruction_sets[0].instructions;
  ASSERT_TRUE(is_user(first[0]));
  EXPECT_EQ(std::get<UserInstruction>(first[0]).until, TransitionSpec::door_open());
  EXPECT_EQ(std::get<UserInstruction>(first[1]).until, TransitionSpec::weight_change(200));
  const auto& heat = std::get<DeviceInstruction>(first[3]);
  EXPECT_EQ(heat.power_watts, 600);
  EXPECT_EQ(heat.duration_seconds, 120);
  EXPECT_EQ(std::get<UserInstruction>(first[6]).until, TransitionSpec::weight_change(-200));
}

TEST(Document, Utf8PassesThroughUnescaped) {
  const auto text = testkit::read_text(testkit::samples_dir() / "products" / "gemuesesuppe.json");
  const auto r = parse_resource(text);
  EXPECT_EQ(r.product.name, "Gemüsesuppe");
  const auto out = serialize_resource(r);
  EXPECT_NE(out.find("Gemüsesuppe"), std::string::npos);
  EXPECT_NE(out.find("schließen"), std::string::npos);
  EXPECT_EQ(out.find("\\u00"), std::string::npos);
}

TEST(Document, CompactFormParsesToSameResource) {
  for (const auto& file : testkit::product_corpus()) {
    const auto r = parse_resource(file.text);
    const auto compact = serialize_resource_compact(r);
    EXPECT_EQ(compact.find('\n'), std::string::npos);
    EXPECT_EQ(parse_resource(compact), r);
  }
}

TEST(Document, RandomRoundTrip) {
  testkit::Rng rng(20);
  for (int i = 0; i < 300; ++i) {
    const auto r = testkit::random_parseable_resource(rng);
    const auto text = serialize_resource(r);
    const auto back = parse_resource(text);
    ASSERT_EQ(back, r) << text;
    ASSERT_EQ(serialize_resource(back), text);
  }
}

TEST(Document, SyntaxErrors) {
  EXPECT_EQ(parse_failure("").fault(), ParseFault::SyntaxError);
  EXPECT_EQ(parse_failure("{").fault(), ParseFault::SyntaxError);
  EXPECT_EQ(parse_failure(kSoup + "x").fault(), ParseFault::SyntaxError);
  const auto malformed = testkit::read_text(testkit::samples_dir() / "invalid" / "malformed.json");
  EXPECT_EQ(parse_failure(malformed).fault(), ParseFault::SyntaxError);
}

TEST(Document, DuplicateKeysRejected) {
  auto doc = kSoup;
  doc.replace(doc.find("\"name\": \"Tomato soup\""), 0, "\"name\": \"Other\",\n    ");
  EXPECT_EQ(parse_failure(doc).fault(), ParseFault::SyntaxError);
}

TEST(Document, SchemaErrors) {
  auto e = mutated([](json& j) { j["product"]["flavour"] = "mild"; });
  EXPECT_EQ(e.fault(), ParseFault::SchemaError);
  EXPECT_EQ(e.path(), "/product/flavour");

  e = mutated([](json& j) { j["product"].erase("category"); });
  EXPECT_EQ(e.fault(), ParseFault::SchemaError);
  EXPECT_EQ(e.path(), "/product/category");

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"][3]["powerWatts"] = "600"; });
  EXPECT_EQ(e.fault(), ParseFault::SchemaError);
  EXPECT_EQ(e.path(), "/instructionSets/0/instructions/3/powerWatts");

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"][3]["powerWatts"] = 600.5; });
  EXPECT_EQ(e.fault(), ParseFault::SchemaError);

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"][0]["kind"] = "robot"; });
  EXPECT_EQ(e.fault(), ParseFault::SchemaError);
  EXPECT_EQ(e.path(), "/instructionSets/0/instructions/0/kind");

  e = mutated([](json& j) { j["product"]["image"]["kind"] = "hologram"; });
  EXPECT_EQ(e.fault(), ParseFault::SchemaError);

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"][1]["until"]["durationSeconds"] = 5; });
  EXPECT_EQ(e.fault(), ParseFault::SchemaError);

  EXPECT_EQ(parse_failure("[]").fault(), ParseFault::SchemaError);
}

TEST(Document, InvariantErrors) {
  auto e = mutated([](json& j) { j["product"]["barcode"] = "5000112000011"; });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);
  EXPECT_EQ(e.path(), "/product/barcode");

  e = mutated([](json& j) { j["product"]["name"] = "  "; });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);

  e = mutated([](json& j) { j["instructionSets"][1]["abilityLevel"] = 0; });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);
  EXPECT_EQ(e.path(), "/instructionSets/1/abilityLevel");

  e = mutated([](json& j) { j["instructionSets"] = json::array(); });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"] = json::array(); });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);

  e = mutated([](json& j) {
    j["instructionSets"][1]["instructions"][0]["text"] = "";
  });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);

  e = mutated([](json& j) {
    j["instructionSets"][0]["instructions"][3]["activations"]["smokeAlarmAudible"] = true;
  });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);
  EXPECT_EQ(e.path(), "/instructionSets/0/instructions/3/activations/smokeAlarmAudible");

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"][0]["image"]["name"] = "../etc"; });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"][0]["until"] = {{"event", "SmokeDetected"}}; });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);
  EXPECT_NE(std::string(e.what()).find("smoke"), std::string::npos);

  e = mutated([](json& j) { j["instructionSets"][0]["instructions"][1]["until"]["minDeltaGrams"] = 0; });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);

  e = mutated([](json& j) {
    j["instructionSets"][0]["instructions"][4]["until"]["durationSeconds"] = 0;
  });
  EXPECT_EQ(e.fault(), ParseFault::InvariantError);
}

TEST(Document, MediaOnlyUserStepNeedsNoText) {
  auto j = json::parse(kSoup);
  j["instructionSets"][0]["instructions"][0]["text"] = "";
  const auto r = parse_resource(j.dump());
  EXPECT_TRUE(std::get<UserInstruction>(r.instruction_sets[0].instructions[0]).text.empty());
}

TEST(Document, RangeProblemsAreLeftToLint) {
  auto j = json::parse(kSoup);
  j["instructionSets"][0]["instructions"][3]["powerWatts"] = 5000;
  j["instructionSets"][1]["abilityLevel"] = 1;
  EXPECT_NO_THROW(parse_resource(j.dump()));
}

TEST(MediaName, SafetyRule) {
  EXPECT_TRUE(is_safe_media_name("soup-place.mp4"));
  EXPECT_TRUE(is_safe_media_name("A_b.c-9"));
  EXPECT_FALSE(is_safe_media_name(""));
  EXPECT_FALSE(is_safe_media_name("../etc"));
  EXPECT_FALSE(is_safe_media_name(".hidden"));
  EXPECT_FALSE(is_safe_media_name("a/b"));
  EXPECT_FALSE(is_safe_media_name("a b"));
  EXPECT_FALSE(is_safe_media_name("ü.png"));
  EXPECT_TRUE(is_safe_media_name(std::string(128, 'a')));
  EXPECT_FALSE(is_safe_media_name(std::string(129, 'a')));
}

}  // namespace
}  // namespace csa::dsl
