#include "csa/service/errors.hpp"

namespace csa::service {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::InvalidBarcode: return "InvalidBarcode";
    case ErrorCode::ParseFailed: return "ParseFailed";
    case ErrorCode::LintFailed: return "LintFailed";
    case ErrorCode::BarcodeMismatch: return "BarcodeMismatch";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::UnsafeName: return "UnsafeName";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::SessionLimitExceeded: return "SessionLimitExceeded";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::StorageFailed: return "StorageFailed";
  }
  return "?";
}

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadRequest:
    case ErrorCode::InvalidBarcode:
    case ErrorCode::ParseFailed:
    case ErrorCode::BarcodeMismatch:
    case ErrorCode::UnsafeName: return 400;
    case ErrorCode::NotFound:
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::PreconditionViolated: return 409;
    case ErrorCode::LintFailed: return 422;
    case ErrorCode::SessionLimitExceeded: return 429;
    case ErrorCode::StorageFailed: return 500;
  }
  return 500;
}

nlohmann::ordered_json ServiceError::to_json() const {
  nlohmann::ordered_json body;
  body["code"] = to_string(code_);
  body["message"] = what();
  body["diagnostics"] = diagnostics_;
  return {{"error", std::move(body)}};
}

}  // namespace csa::service
