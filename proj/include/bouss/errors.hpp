#pragma once

#include <stdexcept>
#include <string>

namespace bouss {

/// Base class for all solver errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid grid/problem/run specification.
struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error("invalid spec: " + msg) {}
};

/// fit_mapping could not reach the requested center width in the search range
/// (usually means N is too small for the given L and target width).
struct NoFit : Error {
    explicit NoFit(const std::string& msg) : Error("no mapping fit: " + msg) {}
};

/// A field was passed to an operator expecting a different node family or grid.
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

/// Operation requiring a symmetric grid was given an asymmetric one.
struct AsymmetricGrid : Error {
    explicit AsymmetricGrid(const std::string& msg) : Error("asymmetric grid: " + msg) {}
};

/// Pressure right-hand side has a mean component too large to be roundoff;
/// signals a broken divergence or boundary treatment upstream.
struct IncompatibleRHS : Error {
    explicit IncompatibleRHS(const std::string& msg) : Error("incompatible rhs: " + msg) {}
};

/// A linear solve failed (singular pivot outside the admissible pressure null mode).
struct SolverFailure : Error {
    explicit SolverFailure(const std::string& msg) : Error("solver failure: " + msg) {}
};

/// A field picked up NaN/Inf values; usually the time step is too large.
struct NonFinite : Error {
    explicit NonFinite(const std::string& msg) : Error("non-finite field: " + msg) {}
};

/// Division by a zero reference value in a relative-error diagnostic.
struct ZeroReference : Error {
    explicit ZeroReference(const std::string& msg) : Error("zero reference: " + msg) {}
};

/// Config file could not be parsed/validated; message lists all named errors.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("config error: " + msg) {}
};

/// Filesystem/IO failure with path context.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

} // namespace bouss
