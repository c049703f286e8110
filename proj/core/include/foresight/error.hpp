#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foresight {

/// Classification of every failure the core can raise. The service maps each
/// code to exactly one HTTP status and machine code.
enum class ErrorCode {
  Validation,         ///< malformed or out-of-range input
  NotFound,           ///< unknown idea or route
  IllegalTransition,  ///< (state, event) pair not in the funnel table
  Consistency,        ///< event payload contradicts its kind or the idea
  Config,             ///< invalid threshold, target, grid cap, budget
  MissingFile,        ///< portfolio file does not exist
  Parse,              ///< text is not JSON
  UnknownVersion,     ///< unrecognised schema_version
  Invariant,          ///< loaded portfolio breaks a file-level invariant
  Io,                 ///< read/write/rename failure
};

std::string_view machine_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string path = {});

  ErrorCode code() const noexcept { return code_; }
  /// JSON-pointer-style location of the offending field, empty if none.
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

  void prepend_path(std::string_view prefix);

 private:
  ErrorCode code_;
  std::string message_;
  std::string path_;
};

}  // namespace foresight
