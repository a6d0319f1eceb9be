#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Base for every error raised by the library. Callers that only care about
// failure vs success catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Amplitudes that do not sum to unit probability.
class NormalizationError : public Error {
public:
    using Error::Error;
};

// Floating-point results that violate a mathematical invariant beyond noise.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// A table schedule asked for a step past its last entry.
class ScheduleExhausted : public Error {
public:
    using Error::Error;
};

// Lattice window or Bessel truncation range above the configured cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain a routine supports (negative alpha, huge order...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Too few usable samples for a fit or a localization verdict.
class InsufficientData : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qwalk
