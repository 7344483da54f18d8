#pragma once

#include <stdexcept>
#include <string>

namespace telegf {

// Input outside the mathematical domain of an operation (negative Bessel
// argument, query outside the half line, t inside an inversion exclusion
// radius, ...). Derives from std::domain_error so callers can catch either.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid configuration: bad grid, CFL violation, inconsistent CLI options.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Analytic routes only cover backreaction with beta = 1.
class UnsupportedRegime : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure did not reach its requested tolerance. The best
// estimate and its error are kept so callers may still use them.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best, double error)
        : std::runtime_error(what), best_estimate_(best), error_estimate_(error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

// Two independent routes disagree by more than their combined error.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace telegf
