#pragma once

#include <stdexcept>
#include <string>

namespace sdflow {

/// Raised when an integration leaves the regime the schemes can represent
/// (NaN, curvature overflow under a stiff nonlinearity, runaway growth).
class blowup_error : public std::runtime_error {
public:
    blowup_error(double time, std::string reason)
        : std::runtime_error("blow-up at t=" + std::to_string(time) + ": " + reason),
          time_(time), reason_(std::move(reason)) {}

    double time() const { return time_; }
    const std::string& reason() const { return reason_; }

private:
    double time_;
    std::string reason_;
};

/// Configuration rejected before any computation started.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sdflow
