// errors.hpp — exception taxonomy shared by the cascade library and its CLI

#pragma once

#include <stdexcept>

namespace cascade {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid physical input: negative decay rate, wrong configuration, ...
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested quantity has no finite value in this parameter regime
// (e.g. coupling corrections at delta_c = 0 with gamma12 = gamma13).
class DegenerateRegime : public Error {
public:
    using Error::Error;
};

// A closed-form denominator collapsed below the representable floor.
class SingularDenominator : public Error {
public:
    using Error::Error;
};

// The two resonance eigenvalues coincide; the amplitude stays finite but
// the split into two pathways is singular.
class ExceptionalPoint : public Error {
public:
    using Error::Error;
};

// Parameters violate the validity gate of a perturbative expansion.
class RegimeViolation : public Error {
public:
    using Error::Error;
};

// Malformed sampling grid or series.
class GridError : public Error {
public:
    using Error::Error;
};

// Bisection bracket does not contain the sought transition.
class BracketError : public Error {
public:
    using Error::Error;
};

// Bad run configuration (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

// File input/output failure (CLI exit code 3).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace cascade
