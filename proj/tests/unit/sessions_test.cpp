#include <gtest/gtest.h>

#include <set>
#include <thread>

#include <json.hpp>

#include "corpus.hpp"
#include "csa/service/errors.hpp"
#include "csa/service/sessions.hpp"
#include "temp_dir.hpp"

namespace csa::service {
namespace {

using json = nlohmann::json;
using namespace std::chrono_literals;
namespace act = sim::action;

const std::string kSoupBarcode = "5000112000016";  // sets at levels 1 and 3

struct Fixture {
  testkit::TempDir dir;
  ProductStore store{dir.path()};
  std::chrono::steady_clock::time_point now{};
  std::unique_ptr<SessionManager> sessions;

  explicit Fixture(SessionOptions opts = {}) {
    store.put(kSoupBarcode, testkit::read_text(testkit::samples_dir() / "products" / "tomato-soup.json"));
    sessions = std::make_unique<SessionManager>(store, opts, [this] { return now; });
  }

  std::string create(std::int64_t level = 1) {
    return json::parse(sessions->create(kSoupBarcode, level))["sessionId"].get<std::string>();
  }
  json apply(const std::string& id, host::Input in) { return json::parse(sessions->apply(id, in)); }
};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ServiceError";
  return ErrorCode::BadRequest;
}

TEST(Sessions, CreateReturnsFirstSnapshot) {
  Fixture f;
  const auto snap = json::parse(f.sessions->create(kSoupBarcode, 1));
  EXPECT_EQ(snap["revision"], 1);
  EXPECT_EQ(snap["phase"], "AwaitingUser");
  EXPECT_EQ(snap["index"], 0);
  EXPECT_EQ(snap["setId"], "soup-detailed");
  EXPECT_FALSE(snap["pendingMedia"].empty());
  EXPECT_EQ(snap["sessionId"].get<std::string>().size(), 16u);
  EXPECT_EQ(json::parse(f.sessions->get(snap["sessionId"])), snap);
}

TEST(Sessions, AbilityLevelSelectsTheSet) {
  Fixture f;
  EXPECT_EQ(json::parse(f.sessions->create(kSoupBarcode, 99))["setId"], "soup-brief");
  EXPECT_EQ(json::parse(f.sessions->create(kSoupBarcode, 2))["setId"], "soup-detailed");
  EXPECT_EQ(code_of([&] { f.sessions->create(kSoupBarcode, 0); }), ErrorCode::BadRequest);
}

TEST(Sessions, UnknownProductAndSession) {
  Fixture f;
  EXPECT_EQ(code_of([&] { f.sessions->create("4006381333931", 1); }), ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { f.sessions->get("nope"); }), ErrorCode::UnknownSession);
  EXPECT_EQ(code_of([&] { f.sessions->apply("nope", host::input::Abort{}); }), ErrorCode::UnknownSession);
}

TEST(Sessions, DoorOpenDuringHeatingPauses) {
  Fixture f;
  const auto id = f.create();
  f.apply(id, sim::Action{act::OpenDoor{}});
  f.apply(id, sim::Action{act::PlaceLoad{}});
  auto snap = f.apply(id, sim::Action{act::CloseDoor{}});
  EXPECT_EQ(snap["phase"], "Heating");
  EXPECT_EQ(snap["appliance"]["magnetron"], true);
  snap = f.apply(id, sim::Action{act::OpenDoor{}});
  EXPECT_EQ(snap["phase"], "HeatingPaused");
  EXPECT_EQ(snap["appliance"]["magnetron"], false);
  EXPECT_EQ(snap["revision"], 5);
}

TEST(Sessions, ClockAdvancesThroughHeatingAndTimers) {
  Fixture f;
  const auto id = f.create();
  f.apply(id, sim::Action{act::OpenDoor{}});
  f.apply(id, sim::Action{act::PlaceLoad{}});
  f.apply(id, sim::Action{act::CloseDoor{}});
  auto snap = f.apply(id, host::input::Advance{120'000});
  EXPECT_EQ(snap["phase"], "AwaitingUser");
  EXPECT_EQ(snap["index"], 4);
  snap = f.apply(id, host::input::Advance{60'000});
  EXPECT_EQ(snap["index"], 5);
  EXPECT_EQ(code_of([&] { f.apply(id, host::input::Advance{0}); }), ErrorCode::BadRequest);
}

TEST(Sessions, ViolationsChangeNothing) {
  Fixture f;
  const auto id = f.create();
  const auto before = f.sessions->get(id);
  EXPECT_EQ(code_of([&] { f.apply(id, sim::Action{act::PlaceLoad{}}); }), ErrorCode::PreconditionViolated);
  EXPECT_EQ(http_status(ErrorCode::PreconditionViolated), 409);
  EXPECT_EQ(f.sessions->get(id), before);
}

TEST(Sessions, CompletedSessionAbsorbsActions) {
  Fixture f;
  const auto id = f.create();
  f.apply(id, host::input::Abort{});
  const auto snap = f.apply(id, sim::Action{act::Confirm{}});
  EXPECT_EQ(snap["phase"], "Aborted");
  EXPECT_EQ(snap["terminal"], true);
}

TEST(Sessions, CapIsEnforced) {
  SessionOptions opts;
  opts.cap = 2;
  Fixture f(opts);
  f.create();
  f.create();
  EXPECT_EQ(code_of([&] { f.create(); }), ErrorCode::SessionLimitExceeded);
  EXPECT_EQ(http_status(ErrorCode::SessionLimitExceeded), 429);
}

TEST(Sessions, IdleSessionsExpire) {
  SessionOptions opts;
  opts.idle_expiry = 10min;
  Fixture f(opts);
  const auto a = f.create();
  const auto b = f.create();
  f.now += 6min;
  f.sessions->get(a);
  f.now += 6min;
  EXPECT_EQ(f.sessions->expire_idle(), 1u);
  EXPECT_TRUE(f.sessions->exists(a));
  EXPECT_FALSE(f.sessions->exists(b));
  EXPECT_EQ(code_of([&] { f.sessions->get(b); }), ErrorCode::UnknownSession);
  EXPECT_EQ(f.sessions->wait(b, 1, 10ms).kind, StreamItem::Kind::Gone);
}

TEST(Sessions, PumpSkipsTerminalSessionsAndIsNotActivity) {
  SessionOptions opts;
  opts.idle_expiry = 1min;
  Fixture f(opts);
  const auto live = f.create();
  const auto done = f.create();
  f.apply(done, host::input::Abort{});
  f.sessions->advance_all(1000);
  EXPECT_EQ(json::parse(f.sessions->get(live))["revision"], 2);
  EXPECT_EQ(json::parse(f.sessions->get(done))["revision"], 2);
  f.now += 2min;
  f.sessions->advance_all(1000);
  EXPECT_EQ(f.sessions->expire_idle(), 2u);
}

TEST(Sessions, WaitDeliversEveryRevision) {
  SessionOptions opts;
  opts.history_limit = 3;
  Fixture f(opts);
  const auto id = f.create();
  EXPECT_EQ(f.sessions->wait(id, 2, 10ms).kind, StreamItem::Kind::Timeout);
  std::thread producer([&] {
    std::this_thread::sleep_for(20ms);
    f.apply(id, sim::Action{act::OpenDoor{}});
  });
  const auto item = f.sessions->wait(id, 2, 5s);
  producer.join();
  ASSERT_EQ(item.kind, StreamItem::Kind::Snapshot);
  EXPECT_EQ(json::parse(item.snapshot)["revision"], 2);

  for (int i = 0; i < 4; ++i) f.apply(id, sim::Action{act::Confirm{}});
  EXPECT_EQ(f.sessions->wait(id, 1, 10ms).kind, StreamItem::Kind::TooFarBehind);
  EXPECT_EQ(f.sessions->wait(id, 4, 10ms).kind, StreamItem::Kind::Snapshot);
}

TEST(Sessions, ConcurrentCallsAreLinearized) {
  Fixture f;
  const auto id = f.create();
  std::mutex m;
  std::set<std::int64_t> seen;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 25; ++i) {
        host::Input in = (t % 2) ? host::Input{host::input::Advance{250}} : host::Input{sim::Action{act::Confirm{}}};
        const auto snap = f.apply(id, in);
        std::lock_guard lock(m);
        EXPECT_TRUE(seen.insert(snap["revision"].get<std::int64_t>()).second);
      }
    });
  }
  for (auto& t : threads) t.join();
  ASSERT_EQ(seen.size(), 100u);
  EXPECT_EQ(*seen.begin(), 2);
  EXPECT_EQ(*seen.rbegin(), 101);
  EXPECT_EQ(json::parse(f.sessions->get(id))["clockMillis"], 50 * 250);
}

}  // namespace
}  // namespace csa::service
