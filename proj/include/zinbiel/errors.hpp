#pragma once

#include <stdexcept>
#include <string>

namespace zinbiel {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular") {}
    using Error::Error;
};

struct NotNilpotent : Error {
    NotNilpotent() : Error("algebra is not nilpotent") {}
    using Error::Error;
};

struct DimensionTooSmall : Error {
    using Error::Error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

/// Arithmetic attempted between scalars living in distinct quadratic extensions.
struct ExtensionMismatch : Error {
    using Error::Error;
};

/// A value cannot be expressed in Q(sqrt r) with a positive radicand.
struct NotRepresentable : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

// --- DSL errors. All carry the 1-based source line when known. ---

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct SyntaxError : ParseError {
    using ParseError::ParseError;
};

struct IndexOutOfRange : ParseError {
    using ParseError::ParseError;
};

struct DuplicateProduct : ParseError {
    using ParseError::ParseError;
};

struct BadRational : ParseError {
    using ParseError::ParseError;
};

struct UnboundParameter : Error {
    using Error::Error;
};

/// Quadratic-extension entries may appear in basis changes but not in algebra files.
struct ExtensionScalarNotSerializable : Error {
    using Error::Error;
};

// --- Modular / search errors. ---

struct DenominatorDivisibleByP : Error {
    using Error::Error;
};

struct SearchSpaceTooLarge : Error {
    using Error::Error;
};

} // namespace zinbiel
