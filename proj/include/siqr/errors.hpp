#pragma once

#include <stdexcept>
#include <string>

namespace siqr {

/// State outside the domain of a model right-hand side (e.g. Q >= N in the full model).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Recovery attempted at a point where the outputs carry no information
/// about the requested quantity (Q = 0, I = 0).
class SingularPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RootSelectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Jet is inconsistent with the model variant it is being inverted for.
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-positive measurement reached an equation that takes its log or divides by it.
class MeasurementGuardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An integration failed at a known time.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time)
    {
    }

    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Observer state became non-finite.
class DivergenceError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

} // namespace siqr
