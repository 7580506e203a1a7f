#pragma once

#include <stdexcept>
#include <string>

namespace lrr {

// Invalid user-supplied parameter or configuration value.
struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A matrix required to have full column rank does not.
struct RankError : std::runtime_error {
  explicit RankError(const std::string& msg) : std::runtime_error(msg) {}
};

// File or stream problem (missing file, malformed CSV/JSON, ...).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lrr
