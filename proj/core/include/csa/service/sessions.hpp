#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>

#include "csa/host/session_host.hpp"
#include "csa/service/store.hpp"

namespace csa::service {

struct SessionOptions {
  std::size_t cap = 64;
  std::chrono::milliseconds idle_expiry = std::chrono::minutes(30);
  // Snapshots kept per session for the push stream; a reader further
  // behind than this is disconnected rather than shown a gap.
  std::size_t history_limit = 4096;
  host::HostConfig host;
};

/// Outcome of waiting on a session's snapshot stream.
struct StreamItem {
  enum class Kind { Snapshot, Timeout, Gone, TooFarBehind } kind = Kind::Timeout;
  std::string snapshot;
};

/// Live sessions: in memory, ephemeral, each with its own serialized input
/// queue. Operations on one session are linearized by its mutex; the map
/// lock is only held to look sessions up.
class SessionManager {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  SessionManager(const ProductStore& store, SessionOptions options, Clock clock = {});

  /// Returns the first snapshot (revision 1). Throws ServiceError:
  /// NotFound, InvalidBarcode, BadRequest, SessionLimitExceeded.
  std::string create(std::string_view barcode, std::int64_t ability_level);
  std::string get(const std::string& id);
  /// Throws UnknownSession, PreconditionViolated, BadRequest.
  std::string apply(const std::string& id, const host::Input& in);

  /// Blocks up to `timeout` for the snapshot with the given revision.
  StreamItem wait(const std::string& id, std::int64_t revision, std::chrono::milliseconds timeout);

  bool exists(const std::string& id);

  /// Advances every non-terminal session's clock (real-time pump).
  void advance_all(std::int64_t dt_millis);

  /// Drops sessions idle past the expiry; returns how many.
  std::size_t expire_idle();
  std::size_t size();

 private:
  struct Slot;
  std::shared_ptr<Slot> lookup(const std::string& id);
  std::string new_id();

  const ProductStore& store_;
  SessionOptions options_;
  Clock clock_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t id_state_;
};

}  // namespace csa::service
