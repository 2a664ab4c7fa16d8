#pragma once

#include <stdexcept>
#include <string>

namespace fujita {

/// Base class of every arithmetic failure raised by the toolkit.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public MathError {
public:
    using MathError::MathError;
};

/// Argument outside the domain of an operation (negative radicand, q <= sigma, ...).
class DomainError : public MathError {
public:
    using MathError::MathError;
};

class UnboundVariable : public MathError {
public:
    explicit UnboundVariable(const std::string& name)
        : MathError("unbound variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Raised when an operation meets a node shape it cannot handle
/// (e.g. differentiating through min/max/piecewise).
class UnsupportedShape : public MathError {
public:
    using MathError::MathError;
};

/// Internal consistency check failed; signals a bug or invalid input data.
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace fujita
