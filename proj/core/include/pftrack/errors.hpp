#ifndef PFTRACK_ERRORS_HPP_
#define PFTRACK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pftrack {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AllZeroWeights : Error {
    AllZeroWeights() : Error("all particle weights are zero") {}
};

struct NotNormalized : Error {
    NotNormalized() : Error("particle set is not normalized") {}
};

struct NoHeavyParticles : Error {
    NoHeavyParticles() : Error("class A has light particles but no heavy attractors") {}
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ImageTooSmall : Error {
    using Error::Error;
};

struct EmptyRegion : Error {
    EmptyRegion() : Error("region is empty after clamping to image bounds") {}
};

struct AllPixelsBelowEdgeThreshold : Error {
    AllPixelsBelowEdgeThreshold() : Error("no edge pixels above magnitude threshold in region") {}
};

struct ZeroCount : Error {
    ZeroCount() : Error("integral histogram query has zero total count") {}
};

struct TargetLost : Error {
    TargetLost() : Error("target lost: all particle weights zero on consecutive frames") {}
};

struct MissingFrames : Error {
    using Error::Error;
};

struct MalformedGroundTruth : Error {
    using Error::Error;
};

struct NoGroundTruth : Error {
    NoGroundTruth() : Error("sequence has no ground truth") {}
};

struct IoFailure : Error {
    using Error::Error;
};

} // namespace pftrack

#endif
