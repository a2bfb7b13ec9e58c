#pragma once

#include <stdexcept>
#include <string>

namespace vring {

// Trajectory point with |d/dt Phi| at or below the speed threshold; the
// arc-length reparameterization is undefined there.
class ZeroSpeed : public std::runtime_error {
public:
    explicit ZeroSpeed(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::runtime_error {
public:
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

class DimensionTooLarge : public std::runtime_error {
public:
    explicit DimensionTooLarge(const std::string& what) : std::runtime_error(what) {}
};

class NoFeasibleHistory : public std::runtime_error {
public:
    explicit NoFeasibleHistory(const std::string& what) : std::runtime_error(what) {}
};

class SingularD : public std::runtime_error {
public:
    explicit SingularD(const std::string& what) : std::runtime_error(what) {}
};

// Bad or unknown configuration / coefficient input.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A trial log that cannot be resumed from. line is 1-based.
class LogCorrupt : public std::runtime_error {
public:
    LogCorrupt(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace vring
