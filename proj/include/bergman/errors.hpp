#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergman {

/// A precondition on an argument or a measure parameter was violated.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure stopped before reaching its target accuracy.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    /// Best error estimate reached before giving up.
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Independent routes to the same quantity disagreed beyond tolerance.
class VerificationFailure : public std::runtime_error {
public:
    VerificationFailure(const std::string& what, std::vector<std::complex<double>> values)
        : std::runtime_error(what), values_(std::move(values)) {}

    const std::vector<std::complex<double>>& values() const noexcept { return values_; }

private:
    std::vector<std::complex<double>> values_;
};

/// Real-root isolation of a density polynomial failed (ill-conditioned input).
class RootFindingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bergman
