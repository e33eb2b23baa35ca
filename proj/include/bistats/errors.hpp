#pragma once

#include <stdexcept>
#include <string>

namespace bistats {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two operands belong to different group descriptors.
struct DescriptorMismatchError : Error {
  using Error::Error;
};

/// A matrix fails the membership test of its group.
struct MembershipError : Error {
  using Error::Error;
};

/// Argument outside the principal-branch domain of the group logarithm
/// (an eigenvalue on or near the closed negative real axis).
struct OutOfDomainError : Error {
  using Error::Error;
};

/// Iterative procedure exhausted its iteration budget.
struct NoConvergenceError : Error {
  using Error::Error;
};

/// Covariance matrix not invertible at the configured condition bound.
struct SingularCovarianceError : Error {
  using Error::Error;
};

/// Covariance determinant is not positive where a log-determinant is needed.
struct NonpositiveDeterminantError : Error {
  using Error::Error;
};

/// The test statistic could not be evaluated on the observed labeling.
struct StatisticFailedError : Error {
  using Error::Error;
};

/// Triangle with (near-)zero area.
struct DegenerateTriangleError : Error {
  using Error::Error;
};

/// Per-triangle deformation is not orientation-preserving.
struct OrientationFlipError : Error {
  using Error::Error;
};

/// Malformed input file (samples, meshes, labels).
struct ParseError : Error {
  using Error::Error;
};

/// Structural mesh problem (bad indices, disconnected, singular solve).
struct MeshError : Error {
  using Error::Error;
};

/// Invalid argument values (ranges, sizes).
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace bistats
