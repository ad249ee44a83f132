#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bps {

/// Base of every structured failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad orders, malformed data).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class NonUnitConstantTerm : public PreconditionError {
public:
    NonUnitConstantTerm() : PreconditionError("constant term is not a unit of the coefficient ring") {}
};

class BadConstantTerm : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class BadWeight : public PreconditionError {
public:
    explicit BadWeight(int w)
        : PreconditionError("Eisenstein weight must be even and >= 2, got " + std::to_string(w))
    {
    }
};

class NotSymmetric : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NonIntegerCoefficient : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class WeightMismatch : public PreconditionError {
public:
    WeightMismatch(int a, int b)
        : PreconditionError("weight mismatch: " + std::to_string(a) + " vs " + std::to_string(b))
    {
    }
};

class MissingPrerequisite : public PreconditionError {
public:
    MissingPrerequisite(int genus, int n)
        : PreconditionError("missing prerequisite P(g=" + std::to_string(genus) + ", n=" + std::to_string(n) + ")"),
          genus(genus),
          n(n)
    {
    }
    int genus;
    int n;
};

class InsufficientTruncation : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Boundary data too short or degenerate to fix the solution.
class UnderdeterminedBoundary : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Input text does not match the expected schema.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A mathematical check failed: the inputs are well formed but an identity
/// or integrality claim does not hold.
class VerificationError : public Error {
public:
    using Error::Error;
};

class NonIntegralBPS : public VerificationError {
public:
    NonIntegralBPS(std::string klass, int h, std::string value)
        : VerificationError("non-integral BPS invariant n_" + std::to_string(h) + "(" + klass + ") = " + value),
          klass(std::move(klass)),
          h(h),
          value(std::move(value))
    {
    }
    std::string klass;
    int h;
    std::string value;
};


class InconsistentBoundary : public VerificationError {
public:
    using VerificationError::VerificationError;
};

class MismatchAgainstProduct : public VerificationError {
public:
    using VerificationError::VerificationError;
};

} // namespace bps
