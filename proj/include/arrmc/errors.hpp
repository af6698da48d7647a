#pragma once

#include <stdexcept>
#include <string>

namespace arrmc {

/// Base class for every error raised by the library. The CLI maps each
/// category onto an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, bad rational, violated precondition.
class InputError : public Error {
public:
    using Error::Error;
};

/// A mathematical property the operation requires does not hold.
class PropertyError : public Error {
public:
    using Error::Error;
};

class NotGoodLine : public PropertyError {
public:
    using PropertyError::PropertyError;
};

class NonIntegrableInput : public PropertyError {
public:
    using PropertyError::PropertyError;
};

class AssumptionFail : public PropertyError {
public:
    using PropertyError::PropertyError;
};

class StarConditionsFail : public PropertyError {
public:
    using PropertyError::PropertyError;
};

class ParameterIntegral : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class TrivialCharacter : public InputError {
public:
    using InputError::InputError;
};

class SingularInput : public InputError {
public:
    using InputError::InputError;
};

/// Floating point integration or rank decision failed.
class NumericError : public Error {
public:
    using Error::Error;
};

class StepUnderflow : public NumericError {
public:
    using NumericError::NumericError;
};

class ToleranceNotMet : public NumericError {
public:
    using NumericError::NumericError;
};

/// An invariant that the mathematics guarantees was observed to fail.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace arrmc
