#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kstab {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exact_arith
struct DuplicateAbscissa : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    SingularMatrix(std::size_t column, const std::string& what) : Error(what), column(column) {}
    std::size_t column;  // first column with no usable pivot
};

// invariants
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NegativeNormSquare : Error {
    using Error::Error;
};
struct ZeroDenominator : Error {
    using Error::Error;
};
struct DegenerateNorm : Error {
    using Error::Error;
};
struct PositiveDF : Error {
    using Error::Error;
};
struct InvalidModel : Error {
    using Error::Error;
};
struct InvalidPrecision : Error {
    using Error::Error;
};

// toric
struct DegeneratePolytope : Error {
    using Error::Error;
};
struct UnsupportedDimension : Error {
    using Error::Error;
};
struct CreaseMismatch : Error {
    using Error::Error;
};
struct ShiftTooSmall : Error {
    using Error::Error;
};
struct NonPolynomialData : Error {
    using Error::Error;
};
struct ConvexityViolation : Error {
    using Error::Error;
};
struct TriangulationMismatch : Error {
    using Error::Error;
};

// optimize
struct NoNontrivialDirections : Error {
    using Error::Error;
};
struct DimensionTooLarge : Error {
    using Error::Error;
};
struct DegenerateQ : Error {
    using Error::Error;
};

// theorem
struct InvalidEpsilon : Error {
    using Error::Error;
};
struct NotACandidate : Error {
    using Error::Error;
};

// cli / io
struct ParseError : Error {
    using Error::Error;
};

}  // namespace kstab
