#pragma once

#include <stdexcept>
#include <string>

namespace akm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite-difference stencil would leave the chart's domain box.
struct PointTooCloseToBoundary : Error { using Error::Error; };

/// Metric not invertible (or not positive definite) at the evaluation point.
struct SingularMetric : Error { using Error::Error; };

/// Plane spanned by (u, v) is numerically degenerate.
struct DegeneratePlane : Error { using Error::Error; };

/// Two independent computation routes disagree beyond tolerance.
struct OracleMismatch : Error { using Error::Error; };

struct InvalidBeta : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct NotKmuModel : Error { using Error::Error; };
struct NotKmuSpace : Error { using Error::Error; };
struct KappaOutOfRange : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct ConfigParseError : Error { using Error::Error; };

} // namespace akm
