#pragma once

#include <stdexcept>
#include <string>

namespace lemon {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trajectory lands within tol_corner of a corner; undefined beyond.
struct CornerHit : Error {
    using Error::Error;
};

// Line misses the requested circle.
struct NoIntersection : Error {
    using Error::Error;
};

// Generalized-map radicand negative beyond tolerance, or point outside the
// domain of a composition.  stage is the 0-based index of the failing
// factor for compositions, -1 for single maps.
struct OutOfDomain : Error {
    int stage;
    explicit OutOfDomain(const std::string& msg, int stage_ = -1) : Error(msg), stage(stage_) {}
};

// Point lies on the branched locus L_{+b} or L_{-b}.
struct Branched : Error {
    int stage;
    explicit Branched(const std::string& msg, int stage_ = -1) : Error(msg), stage(stage_) {}
};

struct NoConvergence : Error {
    using Error::Error;
};

struct SingularJacobian : Error {
    using Error::Error;
};

struct OrbitEscaped : Error {
    using Error::Error;
};

struct MissingCrossing : Error {
    using Error::Error;
};

struct Degenerate : Error {
    using Error::Error;
};

} // namespace lemon
