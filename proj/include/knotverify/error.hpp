#pragma once

#include <stdexcept>
#include <string>

namespace knotverify {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or angle outside its admissible range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed geometry: too few points, zero-length edges, coincident axis points.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Two strands of a projected crossing are too close in z to tell over from under.
class SingularFrame : public Error {
public:
    using Error::Error;
};

/// Projected strands meet without crossing transversally.
class TangentialCrossing : public Error {
public:
    using Error::Error;
};

/// A knot diagram whose Gauss code violates its own invariants.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Objective returned NaN or infinity during minimization.
class NonFiniteObjective : public Error {
public:
    using Error::Error;
};

}  // namespace knotverify
