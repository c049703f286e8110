#include "foresight/error.hpp"

namespace foresight {

namespace {

std::string compose(const std::string& message, const std::string& path) {
  if (path.empty()) return message;
  return path + ": " + message;
}

}  // namespace

std::string_view machine_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return "VALIDATION";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::IllegalTransition: return "ILLEGAL_TRANSITION";
    case ErrorCode::Consistency: return "CONSISTENCY";
    case ErrorCode::Config: return "CONFIG";
    case ErrorCode::MissingFile: return "MISSING_FILE";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::UnknownVersion: return "UNKNOWN_VERSION";
    case ErrorCode::Invariant: return "INVARIANT";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, std::string message, std::string path)
    : std::runtime_error(compose(message, path)),
      code_(code),
      message_(std::move(message)),
      path_(std::move(path)) {}

void Error::prepend_path(std::string_view prefix) {
  path_.insert(0, prefix);
  static_cast<std::runtime_error&>(*this) = std::runtime_error(compose(message_, path_));
}

}  // namespace foresight
