#pragma once

#include <stdexcept>
#include <string>

namespace ssvb {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exactly-zero pivot during LU elimination; the input matrix is singular.
struct SingularMatrixError : Error {
    SingularMatrixError(const std::string& msg, int pivot_step_)
        : Error(msg), pivot_step(pivot_step_) {}
    int pivot_step;  // elimination step (0-based) where the zero pivot appeared
};

/// A denominator that is positive in exact arithmetic came out <= 0 after rounding.
struct NumericalBreakdownError : Error {
    using Error::Error;
};

/// Fixed-point map evaluated outside its domain.
struct DomainExceededError : Error {
    using Error::Error;
};

/// Iteration cap reached without meeting the convergence tolerance.
struct NotConvergedError : Error {
    using Error::Error;
};

/// Root bracket endpoints carry the same strict sign beyond tolerance.
struct BracketFailureError : Error {
    using Error::Error;
};

/// Malformed input text; line is 1-based.
struct ParseError : Error {
    ParseError(const std::string& msg, int line_) : Error(msg), line(line_) {}
    int line;
};

/// Declared or inferred dimensions are not square.
struct NonSquareError : Error {
    using Error::Error;
};

/// MatrixMarket symmetry qualifier this parser deliberately does not expand.
struct UnsupportedQualifierError : Error {
    using Error::Error;
};

/// Closed-form eigenvalue path asked for a dimension it does not cover.
struct UnsupportedDimensionError : Error {
    using Error::Error;
};

/// Invalid ensemble description.
struct EnsembleSpecError : Error {
    using Error::Error;
};

/// Resampling cap exhausted while generating a nonsingular matrix.
struct GenerationError : Error {
    using Error::Error;
};

}  // namespace ssvb
