#pragma once

#include <stdexcept>
#include <string>

namespace tspan {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input (bad matrix, unparsable rational, ...).
struct ParseError : Error {
    using Error::Error;
};

struct UnknownLabelError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

/// A stated precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

struct NotInPdError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotInTightSpanError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotDominatingError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct SizeCapError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// A four-point violation surfaced while realizing a metric as a tree.
struct NotAdditiveError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct InvalidSubtreeError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Feasibility / boundedness failures of the sequential lexicographic LP.
struct InfeasibleRegionError : Error {
    using Error::Error;
};

struct UnboundedCoordinateError : Error {
    using Error::Error;
};

/// Configurable resource caps (double-description ray count, iteration
/// limits).
struct ResourceLimitError : Error {
    using Error::Error;
};

struct IterationCapError : ResourceLimitError {
    using ResourceLimitError::ResourceLimitError;
};

/// A self-check on a constructed object failed.  Raised instead of
/// returning a silently wrong result.
struct VerificationError : Error {
    using Error::Error;
};

struct ToleranceExceededError : Error {
    using Error::Error;
};

}  // namespace tspan
