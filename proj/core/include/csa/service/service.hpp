#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <string>
#include <thread>

#include "csa/service/media_store.hpp"
#include "csa/service/sessions.hpp"
#include "csa/service/store.hpp"

namespace csa::service {

struct ServiceConfig {
  std::filesystem::path data_dir = "csa-data";
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t session_cap = 64;
  std::chrono::seconds idle_expiry = std::chrono::minutes(30);
  // Virtual milliseconds per real millisecond for the background pump;
  // 0 leaves time entirely to POST /sessions/{id}/clock.
  double time_scale = 0.0;
};

/// HTTP front end over the product store, media store and session manager.
class HttpService {
 public:
  explicit HttpService(ServiceConfig config);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds the configured port (0 picks a free one). Returns false on
  /// failure.
  bool bind();
  int port() const noexcept;
  /// Blocks serving requests until stop().
  bool run();
  void stop();

  ProductStore& store() noexcept { return store_; }
  MediaStore& media() noexcept { return media_; }
  SessionManager& sessions() noexcept { return sessions_; }

 private:
  struct Impl;

  ServiceConfig config_;
  ProductStore store_;
  MediaStore media_;
  SessionManager sessions_;
  std::unique_ptr<Impl> impl_;
  std::atomic<bool> stopping_{false};
  std::jthread pump_;
};

}  // namespace csa::service
