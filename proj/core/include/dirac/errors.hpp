#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

/// Bad user-supplied configuration (grid sizes, bounds, time steps, config files).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// API misuse: a precondition that calling code is responsible for was violated.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// A verification oracle could not reach its requested accuracy.
/// This signals broken test infrastructure, not a solver error.
class OracleFailure : public std::runtime_error {
public:
    explicit OracleFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dirac
