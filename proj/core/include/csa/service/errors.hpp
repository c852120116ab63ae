#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace csa::service {

enum class ErrorCode {
  BadRequest,
  InvalidBarcode,
  ParseFailed,
  LintFailed,
  BarcodeMismatch,
  NotFound,
  UnsafeName,
  UnknownSession,
  SessionLimitExceeded,
  PreconditionViolated,
  StorageFailed,
};

std::string_view to_string(ErrorCode code) noexcept;
int http_status(ErrorCode code) noexcept;

/// Carries a machine-readable code plus optional diagnostics; rendered by
/// the HTTP layer as {"error":{"code","message","diagnostics"}}.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(ErrorCode code, const std::string& message,
               nlohmann::ordered_json diagnostics = nlohmann::ordered_json::array())
      : std::runtime_error(message), code_(code), diagnostics_(std::move(diagnostics)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::ordered_json& diagnostics() const noexcept { return diagnostics_; }

  nlohmann::ordered_json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::ordered_json diagnostics_;
};

}  // namespace csa::service
