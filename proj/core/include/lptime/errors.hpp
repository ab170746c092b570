#pragma once

#include <stdexcept>
#include <string>

namespace lptime {

// Base class for every failure the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sample has a single distinct value, or zero spread where spread is required.
struct DegenerateDistribution : Error {
    using Error::Error;
};

// Probability argument outside the open interval (0, 1).
struct InvalidProbability : Error {
    using Error::Error;
};

// Lagged window leaves too few overlapping observations.
struct InsufficientOverlap : Error {
    using Error::Error;
};

// Series too short for the requested model order.
struct InsufficientData : Error {
    using Error::Error;
};

// Clipped copula density carries no positive mass.
struct DegenerateCopula : Error {
    using Error::Error;
};

// Regressor matrix is rank deficient.
struct RankDeficient : Error {
    using Error::Error;
};

// Autoregressive coefficients outside the stationarity region.
struct UnstableModel : Error {
    using Error::Error;
};

// Moment vector and comoment matrix sizes do not agree.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Argument outside its documented range (non-probability case).
struct InvalidArgument : Error {
    using Error::Error;
};

} // namespace lptime
