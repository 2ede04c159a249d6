#pragma once

#include <stdexcept>
#include <string>

namespace swald {

// Base for all domain errors.  `kind` is a stable machine-readable tag the
// CLI maps into its error JSON; `what()` carries the human diagnostic.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Parameter record fails validation (names the violated constraint).
struct InvalidParams : Error {
    explicit InvalidParams(const std::string& w) : Error("InvalidParams", w) {}
};

// Flow cost too high for a learning region to exist; carries the threshold.
struct NoLearningRegion : Error {
    double c_bar;
    explicit NoLearningRegion(double cb)
        : Error("NoLearningRegion",
                "no learning region: c >= c_bar = " + std::to_string(cb)),
          c_bar(cb) {}
};

// Randomized stopping is degenerate at the requested start (slope <= 0).
struct NoRandomization : Error {
    explicit NoRandomization(const std::string& w) : Error("NoRandomization", w) {}
};

// The stopping rate turned nonpositive mid-path before saturation.
struct MonotonicityBreak : Error {
    double t;
    explicit MonotonicityBreak(double at)
        : Error("MonotonicityBreak",
                "stopping rate turned nonpositive at t = " + std::to_string(at) +
                " before the path saturated"),
          t(at) {}
};

// A bracketed root / fixed point could not be located.
struct NotFound : Error {
    explicit NotFound(const std::string& w) : Error("NotFound", w) {}
};

// Argument outside the operation's stated domain.
struct OutOfRange : Error {
    explicit OutOfRange(const std::string& w) : Error("OutOfRange", w) {}
};

// Operation requires the other competition regime.
struct RegimeError : Error {
    explicit RegimeError(const std::string& w) : Error("RegimeError", w) {}
};

// A cutoff is undefined at these parameters (with the reason).
struct UndefinedValue : Error {
    explicit UndefinedValue(const std::string& w) : Error("Undefined", w) {}
};

// Forward scan exhausted its horizon without a sign change.
struct NoCrossing : Error {
    explicit NoCrossing(const std::string& w) : Error("NoCrossing", w) {}
};

// Config file rejected (parse error or constraint violation).
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error("ConfigError", w) {}
};

}  // namespace swald
