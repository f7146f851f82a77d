#pragma once

#include <stdexcept>
#include <string>

namespace schedrl {

// Invalid user-supplied configuration (CLI exits with code 1).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller broke an API precondition.
class ContractViolation : public std::logic_error {
  public:
    explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

// NaN/Inf detected in the learning stack (CLI exits with code 2).
class NumericsError : public std::runtime_error {
  public:
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check_contract(bool ok, const std::string& msg) {
    if (!ok) {
        throw ContractViolation(msg);
    }
}

inline void check_config(bool ok, const std::string& msg) {
    if (!ok) {
        throw ConfigError(msg);
    }
}

}  // namespace schedrl
