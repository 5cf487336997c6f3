#pragma once

#include "eqf/core.hpp"

#include <functional>

namespace eqf {

/// Central-difference Jacobian of a map R^p -> R^q at a point.
///
/// The step along coordinate i is cbrt(eps) * max(1, |point_i|), the usual
/// balance between truncation and rounding for second-order differences.
/// Intended for tests and as the fallback for charts without closed-form
/// differentials; hot paths use frozen analytic matrices instead.
template <typename Scalar>
[[nodiscard]] MatX<Scalar> numerical_differential(
    const std::function<VecX<Scalar>(const VecX<Scalar>&)>& map, const VecX<Scalar>& point) {
  const Scalar base_step = std::cbrt(std::numeric_limits<Scalar>::epsilon());
  const Eigen::Index p = point.size();
  MatX<Scalar> jac;
  for (Eigen::Index i = 0; i < p; ++i) {
    const Scalar h = base_step * std::max(Scalar(1), std::abs(point(i)));
    VecX<Scalar> hi = point;
    VecX<Scalar> lo = point;
    hi(i) += h;
    lo(i) -= h;
    const VecX<Scalar> column = (map(hi) - map(lo)) / (Scalar(2) * h);
    if (jac.size() == 0) jac.resize(column.size(), p);
    jac.col(i) = column;
  }
  return jac;
}

}  // namespace eqf
