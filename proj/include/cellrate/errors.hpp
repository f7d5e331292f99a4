#pragma once

#include <stdexcept>
#include <string>

namespace cellrate {

// Base for every library error so callers can catch one type at the CLI boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature/iteration budget exhausted before reaching the requested tolerance.
struct NonConvergenceError : Error {
    using Error::Error;
};

// Central-difference step cannot be placed inside the function's domain.
struct DegenerateStepError : Error {
    using Error::Error;
};

// Root bracket [lo, hi] does not straddle a sign change.
struct NoSignChangeError : Error {
    using Error::Error;
};

// A CDF vanished on a region where its logarithm is required.
struct LogOfZeroError : Error {
    using Error::Error;
};

// Pathloss model queried below its reference distance.
struct BelowReferenceDistanceError : Error {
    using Error::Error;
};

// MGF evaluated at or beyond its smallest pole.
struct PoleCrossingError : Error {
    using Error::Error;
};

// Two interference means coincide within tolerance; caller should perturb the location.
struct NearDegenerateMeansError : Error {
    using Error::Error;
};

// Scenario file failed parsing or invariant validation.
struct ScenarioError : Error {
    using Error::Error;
};

}  // namespace cellrate
