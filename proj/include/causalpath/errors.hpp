#pragma once

#include <stdexcept>
#include <string>

namespace causalpath {

/// Broad failure category; the CLI maps these onto distinct exit codes.
enum class ErrorKind {
    InvalidInput,      ///< malformed arguments, files, or preconditions
    NumericalFailure,  ///< model or data cannot support the computation
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::NumericalFailure, what) {}
};

class AlphabetMismatch : public InputError {
public:
    using InputError::InputError;
};

class InvalidDistribution : public InputError {
public:
    using InputError::InputError;
};

class InstanceTooLarge : public InputError {
public:
    using InputError::InputError;
};

/// q(x) = 0 where p(x) > 0: the two predictors are not mutually absolutely continuous.
class AbsoluteContinuityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// log of a zero probability was requested, or an observation has zero likelihood.
class ZeroProbabilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonErgodicModel : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace causalpath
