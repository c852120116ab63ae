#include "csa/service/sessions.hpp"

#include <cstdio>
#include <random>

#include "csa/dsl/select.hpp"
#include "csa/engine/workflow.hpp"
#include "csa/service/errors.hpp"

namespace csa::service {

using nlohmann::ordered_json;
using Kind = StreamItem::Kind;

struct SessionManager::Slot {
  std::string id;
  std::string barcode;
  std::int64_t ability_level = 1;
  std::string set_id;
  host::SessionHost host;

  std::mutex mutex;
  std::condition_variable changed;
  std::deque<std::string> history;  // history.back() is revision `revision`
  std::int64_t revision = 0;
  std::chrono::steady_clock::time_point last_touched;
  bool closed = false;

  Slot(std::string id_, std::string barcode_, std::int64_t level, std::string set, host::SessionHost h)
      : id(std::move(id_)), barcode(std::move(barcode_)), ability_level(level), set_id(std::move(set)),
        host(std::move(h)) {}

  // Caller holds `mutex`.
  void publish(std::size_t history_limit) {
    ++revision;
    ordered_json j;
    j["sessionId"] = id;
    j["revision"] = revision;
    j["barcode"] = barcode;
    j["abilityLevel"] = ability_level;
    j["setId"] = set_id;
    auto fields = host.to_json();
    for (auto& [k, v] : fields.items()) j[k] = std::move(v);
    history.push_back(j.dump());
    while (history.size() > history_limit) history.pop_front();
    changed.notify_all();
  }
};

SessionManager::SessionManager(const ProductStore& store, SessionOptions options, Clock clock)
    : store_(store), options_(std::move(options)), clock_(std::move(clock)), id_state_(std::random_device{}()) {
  if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
  if (options_.history_limit == 0) options_.history_limit = 1;
  options_.host.sim.validate();
}

std::string SessionManager::new_id() {
  // splitmix64 over a random seed: unguessable enough for a LAN kiosk and
  // collision-free for the life of the process.
  std::uint64_t z = (id_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(z));
  return buf;
}

std::size_t SessionManager::expire_idle() {
  std::vector<std::shared_ptr<Slot>> dropped;
  {
    std::lock_guard lock(mutex_);
    const auto now = clock_();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::unique_lock slot_lock(it->second->mutex, std::try_to_lock);
      if (slot_lock.owns_lock() && now - it->second->last_touched > options_.idle_expiry) {
        dropped.push_back(it->second);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (auto& slot : dropped) {
    std::lock_guard lock(slot->mutex);
    slot->closed = true;
    slot->changed.notify_all();
  }
  return dropped.size();
}

std::size_t SessionManager::size() {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionManager::Slot> SessionManager::lookup(const std::string& id) {
  expire_idle();
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(ErrorCode::UnknownSession, "no session \"" + id + "\"");
  return it->second;
}

bool SessionManager::exists(const std::string& id) {
  expire_idle();
  std::lock_guard lock(mutex_);
  return sessions_.count(id) > 0;
}

std::string SessionManager::create(std::string_view barcode, std::int64_t ability_level) {
  if (ability_level < 1) throw ServiceError(ErrorCode::BadRequest, "abilityLevel must be >= 1");
  const auto entry = store_.find(barcode);
  if (!entry) throw ServiceError(ErrorCode::NotFound, "product " + std::string(barcode) + " is not known");

  const auto& set = dsl::select_instruction_set(entry->resource, ability_level);
  auto slot = std::make_shared<Slot>("", entry->barcode.digits(), ability_level, set.id,
                                     host::SessionHost(set, options_.host));
  expire_idle();
  std::lock_guard lock(mutex_);
  if (sessions_.size() >= options_.cap) {
    throw ServiceError(ErrorCode::SessionLimitExceeded,
                       "session limit of " + std::to_string(options_.cap) + " reached");
  }
  do {
    slot->id = new_id();
  } while (sessions_.count(slot->id));
  std::lock_guard slot_lock(slot->mutex);
  slot->last_touched = clock_();
  slot->publish(options_.history_limit);
  sessions_[slot->id] = slot;
  return slot->history.back();
}

std::string SessionManager::get(const std::string& id) {
  auto slot = lookup(id);
  std::lock_guard lock(slot->mutex);
  slot->last_touched = clock_();
  return slot->history.back();
}

std::string SessionManager::apply(const std::string& id, const host::Input& in) {
  auto slot = lookup(id);
  std::lock_guard lock(slot->mutex);
  if (slot->closed) throw ServiceError(ErrorCode::UnknownSession, "session \"" + id + "\" has expired");
  slot->last_touched = clock_();
  try {
    slot->host.apply(in);
  } catch (const sim::PreconditionViolated& e) {
    throw ServiceError(ErrorCode::PreconditionViolated, e.what());
  } catch (const std::invalid_argument& e) {
    throw ServiceError(ErrorCode::BadRequest, e.what());
  }
  slot->publish(options_.history_limit);
  return slot->history.back();
}

StreamItem SessionManager::wait(const std::string& id, std::int64_t revision, std::chrono::milliseconds timeout) {
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return {Kind::Gone, {}};
    slot = it->second;
  }
  std::unique_lock lock(slot->mutex);
  slot->changed.wait_for(lock, timeout, [&] { return slot->closed || slot->revision >= revision; });
  if (slot->revision >= revision) {
    const auto oldest = slot->revision - static_cast<std::int64_t>(slot->history.size()) + 1;
    if (revision < oldest) return {Kind::TooFarBehind, {}};
    return {Kind::Snapshot, slot->history[static_cast<std::size_t>(revision - oldest)]};
  }
  if (slot->closed) return {Kind::Gone, {}};
  return {Kind::Timeout, {}};
}

void SessionManager::advance_all(std::int64_t dt_millis) {
  if (dt_millis <= 0) return;
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, slot] : sessions_) slots.push_back(slot);
  }
  for (auto& slot : slots) {
    std::lock_guard lock(slot->mutex);
    if (slot->closed || engine::is_terminal(slot->host.engine())) continue;
    slot->host.apply(host::input::Advance{dt_millis});
    slot->publish(options_.history_limit);
  }
}

}  // namespace csa::service
