#pragma once

#include "eqf/numdiff.hpp"
#include "eqf/state.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <utility>

namespace eqf {

enum class ChartKind { Component, Exponential, Custom };

[[nodiscard]] constexpr const char* chart_kind_name(ChartKind kind) {
  switch (kind) {
    case ChartKind::Component: return "component";
    case ChartKind::Exponential: return "exponential";
    case ChartKind::Custom: return "custom";
  }
  return "unknown";
}

/// Local coordinates around an origin state: forward maps a neighbourhood of
/// the origin to R^3 with forward(origin) = 0, inverse undoes it. The two
/// differentials are computed once at construction and frozen:
///
///   d_forward_at_origin  : body tangents at the origin -> R^3
///   d_inverse_at_zero    : R^3 -> body tangents at the origin
///
/// The shipped chart kinds carry closed-form differentials; charts built from
/// raw callables fall back to central differences through the maps.
template <typename Scalar>
class Chart {
public:
  using ForwardFn = std::function<Vec3<Scalar>(const SystemState<Scalar>&)>;
  using InverseFn = std::function<SystemState<Scalar>(const Vec3<Scalar>&)>;

  Chart(SystemState<Scalar> origin, ChartKind kind, ForwardFn forward, InverseFn inverse,
        std::optional<std::pair<Mat3<Scalar>, Mat3<Scalar>>> differentials = std::nullopt)
      : origin_(std::move(origin)),
        kind_(kind),
        forward_(std::move(forward)),
        inverse_(std::move(inverse)) {
    if (differentials) {
      d_forward_at_origin_ = differentials->first;
      d_inverse_at_zero_ = differentials->second;
    } else {
      freeze_differentials_numerically();
    }
  }

  [[nodiscard]] const SystemState<Scalar>& origin() const { return origin_; }
  [[nodiscard]] ChartKind kind() const { return kind_; }

  [[nodiscard]] Vec3<Scalar> forward(const SystemState<Scalar>& xi) const { return forward_(xi); }
  [[nodiscard]] SystemState<Scalar> inverse(const Vec3<Scalar>& coords) const {
    return inverse_(coords);
  }

  [[nodiscard]] const Mat3<Scalar>& d_forward_at_origin() const { return d_forward_at_origin_; }
  [[nodiscard]] const Mat3<Scalar>& d_inverse_at_zero() const { return d_inverse_at_zero_; }

  /// Same chart kind and bitwise-identical origin.
  [[nodiscard]] bool same_as(const Chart& other) const {
    return kind_ == other.kind_ && origin_.pose.theta == other.origin_.pose.theta &&
           origin_.pose.x == other.origin_.pose.x;
  }

private:
  void freeze_differentials_numerically() {
    const std::function<VecX<Scalar>(const VecX<Scalar>&)> fwd_curve =
        [this](const VecX<Scalar>& b) -> VecX<Scalar> {
      return forward_(advance(origin_, AlgebraVector<Scalar>::FromCoords(Vec3<Scalar>(b))));
    };
    const std::function<VecX<Scalar>(const VecX<Scalar>&)> inv_curve =
        [this](const VecX<Scalar>& c) -> VecX<Scalar> {
      return body_between(origin_, inverse_(Vec3<Scalar>(c))).coords();
    };
    const VecX<Scalar> zero = VecX<Scalar>::Zero(3);
    d_forward_at_origin_ = numerical_differential<Scalar>(fwd_curve, zero);
    d_inverse_at_zero_ = numerical_differential<Scalar>(inv_curve, zero);
  }

  SystemState<Scalar> origin_;
  ChartKind kind_;
  ForwardFn forward_;
  InverseFn inverse_;
  Mat3<Scalar> d_forward_at_origin_;
  Mat3<Scalar> d_inverse_at_zero_;
};

/// Chart of componentwise differences: (wrapped heading difference,
/// translation difference). Its frozen differentials are exactly
/// blkdiag(1, R(origin)) and its transpose inverse, so they stay exact even
/// for origins far from the identity where differencing the maps would lose
/// digits.
template <typename Scalar>
[[nodiscard]] Chart<Scalar> component_chart(const SystemState<Scalar>& origin) {
  const GroupElement<Scalar> o = origin.pose;
  typename Chart<Scalar>::ForwardFn fwd = [o](const SystemState<Scalar>& xi) {
    return Vec3<Scalar>(angle_difference(xi.pose.theta, o.theta), xi.pose.x.x() - o.x.x(),
                        xi.pose.x.y() - o.x.y());
  };
  typename Chart<Scalar>::InverseFn inv = [o](const Vec3<Scalar>& c) {
    return SystemState<Scalar>(
        GroupElement<Scalar>(o.theta + c(0), Vec2<Scalar>(o.x + Vec2<Scalar>(c(1), c(2)))));
  };
  Mat3<Scalar> d_fwd = Mat3<Scalar>::Identity();
  d_fwd.template bottomRightCorner<2, 2>() = o.rotation();
  Mat3<Scalar> d_inv = Mat3<Scalar>::Identity();
  d_inv.template bottomRightCorner<2, 2>() = o.rotation().transpose();
  return Chart<Scalar>(origin, ChartKind::Component, std::move(fwd), std::move(inv),
                       std::make_pair(d_fwd, d_inv));
}

/// Chart of exponential coordinates around the origin: forward is the group
/// logarithm of the origin-relative element. Both frozen differentials are
/// the identity in body form.
template <typename Scalar>
[[nodiscard]] Chart<Scalar> exponential_chart(const SystemState<Scalar>& origin) {
  const GroupElement<Scalar> o = origin.pose;
  typename Chart<Scalar>::ForwardFn fwd = [o](const SystemState<Scalar>& xi) {
    return log(compose(inverse(o), xi.pose)).coords();
  };
  typename Chart<Scalar>::InverseFn inv = [o](const Vec3<Scalar>& c) {
    return SystemState<Scalar>(compose(o, exp(AlgebraVector<Scalar>::FromCoords(c))));
  };
  return Chart<Scalar>(origin, ChartKind::Exponential, std::move(fwd), std::move(inv),
                       std::make_pair(Mat3<Scalar>::Identity(), Mat3<Scalar>::Identity()));
}

/// Right inverse of the differential of the orbit map X -> phi(X, origin) at
/// the identity. The action here is free and transitive and tangents are kept
/// in body form, so the matrix is the identity; the type exists to keep the
/// correction pipeline explicit about which leg it is on.
template <typename Scalar>
struct ActionDifferentialInverse {
  Mat3<Scalar> matrix{Mat3<Scalar>::Identity()};
};

template <typename Scalar>
[[nodiscard]] ActionDifferentialInverse<Scalar> action_differential_inverse(
    const SystemState<Scalar>& /*origin*/) {
  return ActionDifferentialInverse<Scalar>{};
}

/// Matrix of the coordinate change between two charts whose origins are
/// related by the group element Z through origin_to = phi(Z^{-1}, origin_from):
/// the composition (d forward_to) o (d phi(Z^{-1})) o (d inverse_from) acting
/// R^3 -> R^3. In body form the middle factor is exactly Ad_Z.
///
/// Throws OriginMismatchError when the origins are not related by Z.
template <typename Scalar>
[[nodiscard]] Mat3<Scalar> transition_matrix(const Chart<Scalar>& chart_from,
                                             const Chart<Scalar>& chart_to,
                                             const GroupElement<Scalar>& z) {
  const SystemState<Scalar> mapped(compose(chart_from.origin().pose, inverse(z)));
  const Scalar scale =
      std::max(Scalar(1), chart_to.origin().pose.x.template lpNorm<Eigen::Infinity>());
  const Scalar tol = std::max(Scalar(1e-10) * scale,
                              Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale);
  if (state_distance(chart_to.origin(), mapped) > tol) {
    std::ostringstream msg;
    msg << "transition_matrix: chart_to origin is not phi(Z^-1, chart_from origin) "
        << "(distance " << state_distance(chart_to.origin(), mapped) << ", tolerance " << tol
        << ")";
    throw OriginMismatchError(msg.str());
  }
  return chart_to.d_forward_at_origin() * adjoint_matrix(z) * chart_from.d_inverse_at_zero();
}

}  // namespace eqf
