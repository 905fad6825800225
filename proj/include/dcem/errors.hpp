// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dcem {

// Error taxonomy mirrors the CLI exit codes: config -> 1, scene -> 2,
// internal consistency -> 3.

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
    ConfigError(int line, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

  private:
    int line_ = -1;
};

class SceneError : public std::runtime_error {
  public:
    explicit SceneError(const std::string &msg) : std::runtime_error(msg) {}
    SceneError(int line, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

  private:
    int line_ = -1;
};

// Raised when an internal cross-check fails (e.g. the benchmark result
// equality gate). Always a bug, never a usage error.
class ConsistencyError : public std::logic_error {
  public:
    explicit ConsistencyError(const std::string &msg) : std::logic_error(msg) {}
};

} // namespace dcem
