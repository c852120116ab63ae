#include <gtest/gtest.h>

#include <sstream>

#include "corpus.hpp"
#include "csa/dsl/document.hpp"
#include "csa/host/transcript.hpp"
#include "generators.hpp"
#include "scripts.hpp"

namespace csa::host {
namespace {

using json = nlohmann::json;
namespace act = sim::action;

dsl::ProductResource soup() {
  return dsl::parse_resource(testkit::read_text(testkit::samples_dir() / "products" / "tomato-soup.json"));
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Transcript, HappyPathRecordsAndReplays) {
  const auto r = soup();
  const auto script = testkit::happy_path_script(r.instruction_sets[0]);
  const auto rec = record_session(r, "soup-detailed", script);
  EXPECT_EQ(rec.outcome, ScriptOutcome::Completed);
  const auto lines = lines_of(rec.transcript);
  ASSERT_GE(lines.size(), script.size() + 2);
  const auto header = json::parse(lines[0]);
  EXPECT_EQ(header["csaTranscript"], 1);
  EXPECT_EQ(header["setId"], "soup-detailed");
  EXPECT_EQ(json::parse(lines[1])["input"]["action"], "Start");
  EXPECT_EQ(json::parse(lines.back())["phase"]["phase"], "Complete");

  const auto replay = replay_transcript(rec.transcript);
  EXPECT_TRUE(replay.ok) << replay.line << ": " << replay.message;
}

TEST(Transcript, TimeNeverDecreases) {
  const auto rec = record_session(soup(), "soup-brief", testkit::happy_path_script(soup().instruction_sets[1]));
  const auto lines = lines_of(rec.transcript);
  std::int64_t t = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto now = json::parse(lines[i])["t"].get<std::int64_t>();
    ASSERT_GE(now, t);
    t = now;
  }
}

TEST(Transcript, EditedEffectIsReportedAtItsLine) {
  const auto r = soup();
  const auto rec = record_session(r, "soup-detailed", testkit::happy_path_script(r.instruction_sets[0]));
  auto lines = lines_of(rec.transcript);
  // Find a line that switches the magnetron on and flip it.
  std::size_t target = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto pos = lines[i].find(R"({"effect":"SetMagnetron","on":true})");
    if (pos != std::string::npos) {
      lines[i].replace(pos, std::string(R"({"effect":"SetMagnetron","on":true})").size(),
                       R"({"effect":"SetMagnetron","on":false})");
      target = i;
      break;
    }
  }
  ASSERT_NE(target, 0u);
  std::string edited;
  for (const auto& l : lines) edited += l + "\n";
  const auto replay = replay_transcript(edited);
  EXPECT_FALSE(replay.ok);
  EXPECT_EQ(replay.line, target + 1);
  EXPECT_EQ(replay.expected, lines[target]);
  EXPECT_NE(replay.actual, replay.expected);
}

TEST(Transcript, EmptyTranscriptReplaysTrivially) {
  EXPECT_TRUE(replay_transcript("").ok);
  EXPECT_TRUE(replay_transcript("\n\n").ok);
}

TEST(Transcript, BadHeaderFailsAtLineOne) {
  const auto replay = replay_transcript("{\"hello\":1}\n");
  EXPECT_FALSE(replay.ok);
  EXPECT_EQ(replay.line, 1u);
}

TEST(Transcript, ClosedDoorPlacementStopsTheScript) {
  const std::vector<ScriptLine> script{{0, sim::Action{act::PlaceLoad{}}}};
  const auto rec = record_session(soup(), "soup-brief", script);
  EXPECT_EQ(rec.outcome, ScriptOutcome::PreconditionViolated);
  const auto last = json::parse(lines_of(rec.transcript).back());
  EXPECT_EQ(last["input"]["action"], "PlaceLoad");
  EXPECT_EQ(last["error"].get<std::string>().rfind("PreconditionViolated: ", 0), 0u);
  EXPECT_TRUE(replay_transcript(rec.transcript).ok);
}

TEST(Transcript, PrefixReplaysButTamperingDiverges) {
  const auto rec = record_session(soup(), "soup-brief", testkit::happy_path_script(soup().instruction_sets[1]));
  auto lines = lines_of(rec.transcript);
  std::string truncated;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) truncated += lines[i] + "\n";
  EXPECT_TRUE(replay_transcript(truncated).ok);  // a prefix is still a faithful record
  auto tampered = rec.transcript;
  tampered.replace(tampered.find("\"t\":0,"), 6, "\"t\":1,");
  EXPECT_FALSE(replay_transcript(tampered).ok);
}

TEST(Script, ParsesAndFormats) {
  const std::string text = "{\"t\":0,\"action\":\"OpenDoor\"}\n\n{\"t\":1000,\"action\":\"PlaceLoad\",\"grams\":300,\"initialTempC\":4.0}\n";
  const auto script = parse_action_script(text);
  ASSERT_EQ(script.size(), 2u);
  EXPECT_EQ(script[1].t_millis, 1000);
  EXPECT_EQ(script[1].input, (Input{sim::Action{act::PlaceLoad{300, 4.0}}}));
  EXPECT_EQ(format_script_line(script[0]), R"({"t":0,"action":"OpenDoor"})");
}

TEST(Script, RejectsBadLines) {
  for (const std::string bad : {"{\"action\":\"OpenDoor\"}", "{\"t\":1,\"action\":\"Jump\"}", "nope",
                                "{\"t\":5,\"action\":\"OpenDoor\"}\n{\"t\":4,\"action\":\"CloseDoor\"}"}) {
    EXPECT_THROW(parse_action_script(bad), std::invalid_argument) << bad;
  }
}

TEST(Script, RoundTripsRandomScripts) {
  testkit::Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const auto script = testkit::random_script(rng, 30);
    std::string text;
    for (const auto& line : script) text += format_script_line(line) + "\n";
    const auto back = parse_action_script(text);
    ASSERT_EQ(back.size(), script.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
      ASSERT_EQ(back[k].t_millis, script[k].t_millis);
      ASSERT_EQ(back[k].input, script[k].input);
    }
  }
}

TEST(TranscriptProperty, RandomSessionsReplay) {
  testkit::Rng rng(67);
  for (int i = 0; i < 60; ++i) {
    const auto r = testkit::random_clean_resource(rng, {8, 120, 60});
    const auto& set = r.instruction_sets[static_cast<std::size_t>(testkit::uniform(rng, 0, r.instruction_sets.size() - 1))];
    const auto script = testkit::random_script(rng, 25);
    const auto rec = record_session(r, set.id, script);
    ASSERT_EQ(record_session(r, set.id, script).transcript, rec.transcript);
    const auto replay = replay_transcript(rec.transcript);
    ASSERT_TRUE(replay.ok) << replay.line << ": " << replay.message << "\n-" << replay.expected << "\n+" << replay.actual;
  }
}

}  // namespace
}  // namespace csa::host
