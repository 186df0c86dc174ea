// errors.hpp: exception hierarchy; each family maps onto a stable CLI exit code.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optomech {

enum class ExitCode : int {
    success = 0,
    usage = 2,       // config / usage / invalid parameters
    divergence = 3,  // numerical blow-up in the integrator
    io = 4,
};

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, ExitCode code = ExitCode::usage)
        : std::runtime_error(what), code_(code) {}

    ExitCode exit_code() const noexcept { return code_; }

private:
    ExitCode code_;
};

/// A parameter violates its type invariant.
class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(what) {}
};

/// Bad configuration file; carries the offending key and line (0 when not tied to a line).
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string key, std::size_t line = 0)
        : Error(format(what, key, line)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& what, const std::string& key, std::size_t line) {
        std::string msg = "config";
        if (line > 0) msg += " line " + std::to_string(line);
        if (!key.empty()) msg += " [" + key + "]";
        return msg + ": " + what;
    }

    std::string key_;
    std::size_t line_;
};

/// Covariance data that cannot describe a quantum state (negative symplectic bracket etc).
class NonPhysicalState : public Error {
public:
    explicit NonPhysicalState(const std::string& what) : Error(what) {}
};

/// Root polishing or another iterative procedure failed to meet its tolerance.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& what) : Error(what, ExitCode::divergence) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what, ExitCode::io) {}
};

}  // namespace optomech
