#pragma once

#include <stdexcept>
#include <string>

namespace evpt {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Drive-cycle file violates the cycle invariants (non-monotonic time,
// negative speed, fewer than 2 samples, non-uniform step).
class MalformedCycle : public Error {
public:
    using Error::Error;
};

// Referent motor or thermal network file violates its schema or invariants.
class MalformedData : public Error {
public:
    using Error::Error;
};

// Control input (e.g. axle split fraction) outside its admissible range.
class InvalidControl : public Error {
public:
    using Error::Error;
};

// Requested operating point lies outside the motor envelope.
class InfeasibleOperatingPoint : public Error {
public:
    using Error::Error;
};

// Thermal integration produced a non-finite temperature.
class NumericalDivergence : public Error {
public:
    using Error::Error;
};

// Run configuration failed schema validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Optimizer start point is unusable (non-finite coordinates or objective).
class InvalidStart : public Error {
public:
    using Error::Error;
};

}  // namespace evpt
