#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

// Typed failures surfaced by the numerical kernel and the propagators.
struct NotHermitian : std::runtime_error {
    explicit NotHermitian(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct BadLayout : std::runtime_error {
    explicit BadLayout(const std::string& what) : std::runtime_error(what) {}
};

struct DimMismatch : std::runtime_error {
    explicit DimMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeTime : std::runtime_error {
    explicit NegativeTime(const std::string& what) : std::runtime_error(what) {}
};

struct StepTooLarge : std::runtime_error {
    explicit StepTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct TruncationLeak : std::runtime_error {
    explicit TruncationLeak(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A matrix claimed to be a physical state violates hermiticity, unit trace
// or positivity beyond tolerance.
struct InvalidState : std::runtime_error {
    explicit InvalidState(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cqed
