#pragma once

#include <stdexcept>
#include <string>

namespace lienard {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a map (e.g. p beyond the momentum threshold).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Parameter choice for which a closed form degenerates (k = 0, ω ≤ 0, ...).
class DegenerateParameterError : public Error {
public:
    using Error::Error;
};

/// Evaluation hit a genuine singularity: vanishing denominator, singular phase,
/// p = p*, y = 0.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Orbit amplitude at or above the regular bound 3ω/k.
class RegularityError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class StepCountError : public Error {
public:
    using Error::Error;
};

class InsufficientCrossingsError : public Error {
public:
    using Error::Error;
};

class BracketError : public Error {
public:
    using Error::Error;
};

class NodeCountError : public Error {
public:
    using Error::Error;
};

class ZeroAmplitudeError : public Error {
public:
    using Error::Error;
};

class DegenerateGridError : public Error {
public:
    using Error::Error;
};

/// File could not be written, renamed or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lienard
