#pragma once

#include <stdexcept>
#include <string>

namespace hsbnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad generation parameters or CLI-supplied configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed scenario document. `where` is a JSON pointer or "line N" locator.
class ParseError : public Error {
public:
    ParseError(const std::string& where, const std::string& what)
        : Error("parse error at " + where + ": " + what), where_(where) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// A structurally valid scenario violates a domain invariant.
class ValidationError : public Error {
public:
    ValidationError(const std::string& field, const std::string& what)
        : Error("invalid " + field + ": " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// The semantic-coding queue has utilization >= 1.
class UnstableQueueError : public Error {
public:
    explicit UnstableQueueError(double utilization)
        : Error("unstable SCQ: utilization " + std::to_string(utilization) + " >= 1"),
          utilization_(utilization) {}
    double utilization() const noexcept { return utilization_; }

private:
    double utilization_;
};

/// The PTQ has no effective throughput (every packet is dropped).
class DegenerateQueueError : public Error {
public:
    using Error::Error;
};

/// Requested message rate lies above a saturating B2M function.
class UnreachableRateError : public Error {
public:
    UnreachableRateError(double requested, double saturation)
        : Error("unreachable rate: " + std::to_string(requested) + " msg/s exceeds saturation " +
                std::to_string(saturation) + " msg/s"),
          requested_(requested),
          saturation_(saturation) {}
    double requested() const noexcept { return requested_; }
    double saturation() const noexcept { return saturation_; }

private:
    double requested_;
    double saturation_;
};

/// Numerical failure: truncation loss, singular system with no fallback, etc.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace hsbnet
