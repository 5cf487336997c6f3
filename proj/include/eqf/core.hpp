#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eqf {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Thrown by the group logarithm when the rotation angle is too close to the
/// branch point at -pi for the result to be well defined.
class CutLocusError : public std::domain_error {
public:
  explicit CutLocusError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when two charts (or a chart and a group element) that are supposed
/// to be related by a specific origin change are not.
class OriginMismatchError : public std::invalid_argument {
public:
  explicit OriginMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown by the filter when an update produces NaN or infinite entries.
class NonFiniteStateError : public std::runtime_error {
public:
  explicit NonFiniteStateError(const std::string& what) : std::runtime_error(what) {}
};

/// Wraps an angle into [-pi, pi).
template <typename Scalar>
[[nodiscard]] Scalar wrap_angle(Scalar theta) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar w = std::remainder(theta, Scalar(2) * pi);
  if (w == pi) w = -pi;  // remainder yields (-pi, pi]
  return w;
}

/// Signed angular difference a - b, wrapped into [-pi, pi).
template <typename Scalar>
[[nodiscard]] Scalar angle_difference(Scalar a, Scalar b) {
  return wrap_angle(a - b);
}

}  // namespace eqf
