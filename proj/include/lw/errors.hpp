#pragma once

#include <stdexcept>
#include <string>

namespace lw {

// Error taxonomy mirrored by the CLI exit codes:
//   AssertError  -> 1 (a checked mathematical claim failed)
//   ConfigError  -> 2 (bad arguments, dimensions, or unsupported input)
//   NumericError -> 3 (precision exhaustion, singular systems, non-convergence)
struct AssertError : std::runtime_error {
  explicit AssertError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check(bool cond, const std::string& msg) {
  if (!cond) throw AssertError(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

}  // namespace lw
