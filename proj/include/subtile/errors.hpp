#pragma once

#include <stdexcept>
#include <string>

namespace subtile {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration input.
struct ParseError : Error {
    using Error::Error;
};

// A substitution rule fails to tile the scaled prototile support exactly
// (overlap or gap). Coordinates of the offending cell are in the message.
struct GeometryError : Error {
    GeometryError(int rule, long long cx, long long cy, const std::string& what)
        : Error(what), rule(rule), cell_x(cx), cell_y(cy) {}
    int rule;
    long long cell_x;
    long long cell_y;
};

// Incidence matrix is not primitive (no power is entrywise positive).
struct NotPrimitive : Error {
    using Error::Error;
};

// Spectrum outside the supported regime: non-diagonalizable expanding part,
// or second eigenvalue complex/multiple.
struct DegenerateSpectrum : Error {
    using Error::Error;
};

// One-dimensional length derivation produced rules whose concatenated child
// lengths do not match the expanded parent length.
struct LengthMismatch : Error {
    using Error::Error;
};

// A query reaches outside the safe interior region of a window.
struct MarginError : Error {
    using Error::Error;
};

// Lattice coordinates or integer matrix entries exceeded the safe bound.
struct OverflowError : Error {
    using Error::Error;
};

// Not enough rows/samples to run a fit or an average.
struct InsufficientData : Error {
    using Error::Error;
};

// A spectral-scaling precondition does not hold (theta2 too small, nonzero
// mean, vanishing pairing). Carries a flag so tools can continue in
// exploratory mode.
struct HypothesisViolated : Error {
    using Error::Error;
};

}  // namespace subtile
