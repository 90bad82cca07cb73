#pragma once

#include <stdexcept>
#include <string>

namespace siegelmate {

// Requested output cannot be certified at the working precision.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter solve failed (no bracket, no convergence, inconsistent confirmation).
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Inverse-branch continuity tracking lost the branch.
struct TrackingError : std::runtime_error {
    explicit TrackingError(const std::string& what) : std::runtime_error(what) {}
};

// Two candidate preimages are indistinguishable at the current resolution.
struct AmbiguityError : std::runtime_error {
    explicit AmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

// Model degenerates (degree collapse, resonant multipliers).
struct DegenerateModelError : std::runtime_error {
    explicit DegenerateModelError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values or other numeric breakdown.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace siegelmate
