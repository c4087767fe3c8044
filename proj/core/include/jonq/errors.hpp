#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jonq {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The caller asked for something outside an operation's domain of definition
/// (bad parameters, unsupported kind). The CLI maps these to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A well-posed request failed numerically or hit a degenerate configuration
/// at run time. The CLI maps these to exit code 3.
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidSpec : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class RadiusOne : public ConfigError {
public:
    RadiusOne() : ConfigError("normalized cocycle is undefined on the unit circle (rho = 1)") {}
};

class SideCrossing : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class NotUnimodular : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class IndeterminateAction : public DomainError {
public:
    IndeterminateAction() : DomainError("projective action is indeterminate (0/0)") {}
};

class IndeterminatePoint : public DomainError {
public:
    IndeterminatePoint() : DomainError("exact indeterminacy point (-1, alpha) of f") {}
};

class BranchFailure : public DomainError {
public:
    using DomainError::DomainError;
};

class Overflow : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularFactor : public DomainError {
public:
    explicit SingularFactor(std::size_t step)
        : DomainError("singular cocycle factor at step " + std::to_string(step)), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class InsufficientPoints : public DomainError {
public:
    using DomainError::DomainError;
};

class SmallDivisor : public DomainError {
public:
    SmallDivisor(int order, double modulus)
        : DomainError("small divisor at order " + std::to_string(order) + ": |d| = " +
                      std::to_string(modulus)),
          order_(order),
          modulus_(modulus) {}
    int order() const noexcept { return order_; }
    double modulus() const noexcept { return modulus_; }

private:
    int order_;
    double modulus_;
};

class ZeroComponent : public DomainError {
public:
    using DomainError::DomainError;
};

class SpecializationMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace jonq
