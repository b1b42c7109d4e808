#pragma once

#include <stdexcept>
#include <string>

namespace pll {

// Non-finite or out-of-range argument to a block or constructor.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Bad configuration file or inconsistent simulation settings.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, std::string key = {}, int line = 0)
        : std::runtime_error(msg), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    // 1-based line in the config text, 0 when not tied to a line.
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

class PoleEvaluationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DiscretizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SimulationDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SimulationCancelled : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pll
