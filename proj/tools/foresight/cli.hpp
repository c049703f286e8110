#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "foresight/monte_carlo.hpp"
#include "foresight/service.hpp"

namespace foresight::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

struct Environment {
  std::function<std::optional<std::string>(const std::string&)> getenv;
  Clock clock = system_now;
  SimulationOptions simulation{};
};

/// Process environment and wall clock.
Environment process_environment();

/// Runs one command line (without argv[0]). Returns 0 on success, 1 on a
/// domain error, 2 on a usage error; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = process_environment());

}  // namespace foresight::cli
