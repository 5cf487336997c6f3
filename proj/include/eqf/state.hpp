#pragma once

#include "eqf/se2.hpp"

#include <stdexcept>
#include <vector>

namespace eqf {

/// Point of the state manifold: a planar pose. Kept as a distinct type so
/// states and symmetry-group elements do not mix silently, even though both
/// are SE(2) here.
template <typename Scalar>
struct SystemState {
  GroupElement<Scalar> pose;

  SystemState() = default;
  explicit SystemState(const GroupElement<Scalar>& pose_in) : pose(pose_in) {}
  SystemState(Scalar theta, Scalar x0, Scalar x1) : pose(theta, x0, x1) {}

  [[nodiscard]] static SystemState Identity() { return SystemState(); }

  template <typename Other>
  [[nodiscard]] SystemState<Other> cast() const {
    return SystemState<Other>(pose.template cast<Other>());
  }
};

/// Tangent vector stored as a base point plus body coordinates, i.e. the
/// algebra coordinates u with the vector equal to d/ds|_0 of
/// base * exp(s u). The body convention keeps every tangent a plain
/// 3-vector regardless of the base point.
template <typename Scalar>
struct TangentVector {
  SystemState<Scalar> base;
  AlgebraVector<Scalar> body;
};

/// Fixed set of known landmark positions. Order matters: output blocks are
/// stacked in this order.
template <typename Scalar>
class LandmarkSet {
public:
  explicit LandmarkSet(std::vector<Vec2<Scalar>> points) : points_(std::move(points)) {
    if (points_.empty()) {
      throw std::invalid_argument("LandmarkSet: at least one landmark required");
    }
  }

  [[nodiscard]] const std::vector<Vec2<Scalar>>& points() const { return points_; }
  [[nodiscard]] Eigen::Index count() const {
    return static_cast<Eigen::Index>(points_.size());
  }

  template <typename Other>
  [[nodiscard]] LandmarkSet<Other> cast() const {
    std::vector<Vec2<Other>> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_) pts.push_back(p.template cast<Other>());
    return LandmarkSet<Other>(std::move(pts));
  }

private:
  std::vector<Vec2<Scalar>> points_;
};

/// Point reached by following the body-coordinate direction b from base for
/// unit time: base * exp(b). The canonical curve behind every body-form
/// derivative in this library.
template <typename Scalar>
[[nodiscard]] SystemState<Scalar> advance(const SystemState<Scalar>& base,
                                          const AlgebraVector<Scalar>& b) {
  return SystemState<Scalar>(compose(base.pose, exp(b)));
}

/// Body coordinates of the displacement from one state to another:
/// log(from^{-1} * to). Inverse of advance for small displacements.
template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> body_between(const SystemState<Scalar>& from,
                                                 const SystemState<Scalar>& to) {
  return log(compose(inverse(from.pose), to.pose));
}

template <typename Scalar>
[[nodiscard]] Scalar state_distance(const SystemState<Scalar>& a, const SystemState<Scalar>& b) {
  return group_distance(a.pose, b.pose);
}

using SystemStated = SystemState<double>;
using SystemStatef = SystemState<float>;

}  // namespace eqf
