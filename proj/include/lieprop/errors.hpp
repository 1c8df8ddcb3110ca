#pragma once

#include <stdexcept>
#include <string>

namespace lieprop {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Kernel requested at (or within tolerance of) a zero of sin(omega t).
class CausticSingularity : public DomainError {
public:
    CausticSingularity(const std::string& what, double nearest_caustic_time)
        : DomainError(what), nearest_caustic_time_(nearest_caustic_time) {}

    double nearest_caustic_time() const noexcept { return nearest_caustic_time_; }

private:
    double nearest_caustic_time_;
};

/// A numerical procedure finished but its error estimate exceeds the caller's tolerance.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double achieved_estimate)
        : std::runtime_error(what), achieved_estimate_(achieved_estimate) {}

    double achieved_estimate() const noexcept { return achieved_estimate_; }

private:
    double achieved_estimate_;
};

}  // namespace lieprop
