#pragma once

#include <stdexcept>
#include <string>

namespace cvxpoly {

// Bad arguments: dimension mismatches, out-of-range parameters, malformed input.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A sampling lattice too coarse to produce a usable point set.
struct DegenerateGridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A body without usable interior (inradius below threshold), or a singular map.
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition failed at runtime (e.g. convexity spot-check).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ratio request on a function whose modulus vanishes on the grid.
struct NotAWitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency failure (e.g. an LP that must be bounded came back unbounded).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace cvxpoly
