#pragma once

#include <stdexcept>
#include <string>

namespace mcmcert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different fields (e.g. Q and F_p, or two primes).
class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// Division by zero, or a rational whose denominator vanishes mod p.
class ArithmeticError : public Error {
public:
    using Error::Error;
};

/// A form does not have the degree its position in a presentation requires.
class DegreeMismatch : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

/// Random construction did not produce a generic object within its budget.
class GenericityFailure : public Error {
public:
    using Error::Error;
};

/// A line meets the degeneracy locus, so the restriction has torsion.
class TorsionDetected : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed. Always signals a bug in the engine.
class InternalConsistency : public Error {
public:
    using Error::Error;
};

}  // namespace mcmcert
