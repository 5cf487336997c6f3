#pragma once

#include "eqf/chart.hpp"

#include <memory>

namespace eqf {

/// Symmetry action on states used throughout: right translation of the pose,
/// phi(X, xi) = xi * X. Free and transitive.
template <typename Scalar>
[[nodiscard]] SystemState<Scalar> phi(const GroupElement<Scalar>& x,
                                      const SystemState<Scalar>& xi) {
  return SystemState<Scalar>(compose(xi.pose, x));
}

/// Matching action on velocity inputs: conjugation, psi(X, U) = X^{-1} U X,
/// i.e. Ad_{X^{-1}} on algebra coordinates.
template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> psi(const GroupElement<Scalar>& x,
                                        const AlgebraVector<Scalar>& u) {
  return AlgebraVector<Scalar>::FromCoords(
      Vec3<Scalar>(adjoint_matrix(inverse(x)) * u.coords()));
}

/// Body-frame range/bearing-free landmark output: for each landmark p the
/// block R(theta)^T (p - x), stacked in landmark order (2n rows).
template <typename Scalar>
[[nodiscard]] VecX<Scalar> landmark_output(const SystemState<Scalar>& xi,
                                           const LandmarkSet<Scalar>& lm) {
  const Mat2<Scalar> rt = xi.pose.rotation().transpose();
  VecX<Scalar> y(2 * lm.count());
  for (Eigen::Index i = 0; i < lm.count(); ++i) {
    y.template segment<2>(2 * i) = rt * (lm.points()[static_cast<size_t>(i)] - xi.pose.x);
  }
  return y;
}

/// System description the filter engine works against: the symmetry actions,
/// the velocity lift, and the output map, plus the differentials of the last
/// two. Defaults compute differentials by central differences; concrete
/// systems override them with closed forms where available.
///
/// The engine keeps tangents in body form and relies on the shipped
/// right-translation action for the frozen orbit-differential factors;
/// subclasses are expected to vary the lift and the output, not the action.
template <typename Scalar>
class EquivariantSystem {
public:
  virtual ~EquivariantSystem() = default;

  [[nodiscard]] virtual SystemState<Scalar> phi(const GroupElement<Scalar>& x,
                                                const SystemState<Scalar>& xi) const = 0;
  [[nodiscard]] virtual AlgebraVector<Scalar> psi(const GroupElement<Scalar>& x,
                                                  const AlgebraVector<Scalar>& u) const = 0;

  /// Tangent of the modelled state dynamics at xi under input u.
  [[nodiscard]] virtual TangentVector<Scalar> dynamics(const SystemState<Scalar>& xi,
                                                       const AlgebraVector<Scalar>& u) const {
    return TangentVector<Scalar>{xi, lift(xi, u)};
  }

  [[nodiscard]] virtual VecX<Scalar> output(const SystemState<Scalar>& xi) const = 0;
  [[nodiscard]] virtual Eigen::Index output_dim() const = 0;

  /// Velocity lift: algebra element whose orbit tangent at xi reproduces the
  /// dynamics.
  [[nodiscard]] virtual AlgebraVector<Scalar> lift(const SystemState<Scalar>& xi,
                                                   const AlgebraVector<Scalar>& u) const = 0;

  /// Differential at zero of chart coordinates -> lift value,
  /// x -> lift(chart.inverse(x), w), an R^3 -> R^3 matrix. Central differences
  /// through the chart unless a subclass knows it in closed form.
  [[nodiscard]] virtual Mat3<Scalar> lift_chart_differential(
      const Chart<Scalar>& chart, const AlgebraVector<Scalar>& w) const {
    const std::function<VecX<Scalar>(const VecX<Scalar>&)> through_chart =
        [this, &chart, &w](const VecX<Scalar>& x) -> VecX<Scalar> {
      return lift(chart.inverse(Vec3<Scalar>(x)), w).coords();
    };
    return numerical_differential<Scalar>(through_chart, VecX<Scalar>::Zero(3));
  }

  /// Body-form output differential at xi: the (2n x 3) matrix of
  /// b -> d/ds|_0 output(xi * exp(s b)). Central differences unless
  /// overridden.
  [[nodiscard]] virtual MatX<Scalar> output_differential_body(
      const SystemState<Scalar>& xi) const {
    const std::function<VecX<Scalar>(const VecX<Scalar>&)> along_body =
        [this, &xi](const VecX<Scalar>& b) -> VecX<Scalar> {
      return output(advance(xi, AlgebraVector<Scalar>::FromCoords(Vec3<Scalar>(b))));
    };
    return numerical_differential<Scalar>(along_body, VecX<Scalar>::Zero(3));
  }

  /// Factory for the chart kinds this system supports.
  [[nodiscard]] virtual Chart<Scalar> make_chart(ChartKind kind,
                                                 const SystemState<Scalar>& origin) const {
    switch (kind) {
      case ChartKind::Component: return component_chart(origin);
      case ChartKind::Exponential: return exponential_chart(origin);
      case ChartKind::Custom: break;
    }
    throw std::invalid_argument("make_chart: no factory for custom charts");
  }
};

/// Planar localisation from known landmarks. Dynamics are pose-attached
/// velocities, the lift is the input itself, and the output is the body-frame
/// landmark offsets. Both differentials are closed-form.
template <typename Scalar>
class Se2LocalisationSystem : public EquivariantSystem<Scalar> {
public:
  explicit Se2LocalisationSystem(LandmarkSet<Scalar> landmarks)
      : landmarks_(std::move(landmarks)) {}

  [[nodiscard]] SystemState<Scalar> phi(const GroupElement<Scalar>& x,
                                        const SystemState<Scalar>& xi) const override {
    return eqf::phi(x, xi);
  }

  [[nodiscard]] AlgebraVector<Scalar> psi(const GroupElement<Scalar>& x,
                                          const AlgebraVector<Scalar>& u) const override {
    return eqf::psi(x, u);
  }

  [[nodiscard]] TangentVector<Scalar> dynamics(const SystemState<Scalar>& xi,
                                               const AlgebraVector<Scalar>& u) const override {
    // Pose derivative P * wedge(u); body coordinates are u itself.
    return TangentVector<Scalar>{xi, u};
  }

  [[nodiscard]] VecX<Scalar> output(const SystemState<Scalar>& xi) const override {
    return landmark_output(xi, landmarks_);
  }

  [[nodiscard]] Eigen::Index output_dim() const override { return 2 * landmarks_.count(); }

  [[nodiscard]] AlgebraVector<Scalar> lift(const SystemState<Scalar>& /*xi*/,
                                           const AlgebraVector<Scalar>& u) const override {
    return u;
  }

  /// The lift does not depend on the state at all.
  [[nodiscard]] Mat3<Scalar> lift_chart_differential(
      const Chart<Scalar>& /*chart*/, const AlgebraVector<Scalar>& /*w*/) const override {
    return Mat3<Scalar>::Zero();
  }

  /// Per landmark block: d/ds R^T(s)(p - x(s)) along body directions gives
  /// [J h_i | -I] with J = [[0, 1], [-1, 0]] and h_i the current block value.
  [[nodiscard]] MatX<Scalar> output_differential_body(
      const SystemState<Scalar>& xi) const override {
    const VecX<Scalar> h = output(xi);
    MatX<Scalar> d(2 * landmarks_.count(), 3);
    for (Eigen::Index i = 0; i < landmarks_.count(); ++i) {
      const Vec2<Scalar> hi = h.template segment<2>(2 * i);
      d(2 * i, 0) = hi.y();
      d(2 * i + 1, 0) = -hi.x();
      d.template block<2, 2>(2 * i, 1) = -Mat2<Scalar>::Identity();
    }
    return d;
  }

  [[nodiscard]] const LandmarkSet<Scalar>& landmarks() const { return landmarks_; }

private:
  LandmarkSet<Scalar> landmarks_;
};

/// Residual of the action compatibility of the dynamics: push the dynamics at
/// xi forward through phi_X (by central differences along the body curve) and
/// compare against the dynamics at the mapped state under the mapped input.
/// Expected at the differencing floor, not machine precision.
template <typename Scalar>
[[nodiscard]] Scalar check_system_equivariance(const EquivariantSystem<Scalar>& system,
                                               const GroupElement<Scalar>& x,
                                               const SystemState<Scalar>& xi,
                                               const AlgebraVector<Scalar>& u) {
  const TangentVector<Scalar> t = system.dynamics(xi, u);
  const SystemState<Scalar> mapped = system.phi(x, xi);
  const AlgebraVector<Scalar> expected = system.dynamics(mapped, system.psi(x, u)).body;

  // The identity transformation needs no differencing; compare the two body
  // vectors directly so the trivial case stays at machine precision.
  if (x.theta == Scalar(0) && x.x(0) == Scalar(0) && x.x(1) == Scalar(0)) {
    return (t.body - expected).sup_norm();
  }

  const Scalar scale = t.body.sup_norm();
  if (scale == Scalar(0)) {
    return expected.sup_norm();
  }
  const AlgebraVector<Scalar> dir = (Scalar(1) / scale) * t.body;
  const Scalar h = std::cbrt(std::numeric_limits<Scalar>::epsilon());
  const Vec3<Scalar> hi =
      body_between(mapped, system.phi(x, advance(xi, h * dir))).coords();
  const Vec3<Scalar> lo =
      body_between(mapped, system.phi(x, advance(xi, -h * dir))).coords();
  const Vec3<Scalar> pushed = scale * (hi - lo) / (Scalar(2) * h);
  return (pushed - expected.coords()).template lpNorm<Eigen::Infinity>();
}

/// Residual of the lift compatibility: Ad_{X^{-1}} lift(xi, u) against
/// lift(phi(X, xi), psi(X, u)). Plain algebra, machine-precision sharp.
template <typename Scalar>
[[nodiscard]] Scalar check_lift_equivariance(const EquivariantSystem<Scalar>& system,
                                             const GroupElement<Scalar>& x,
                                             const SystemState<Scalar>& xi,
                                             const AlgebraVector<Scalar>& u) {
  const Vec3<Scalar> lhs = adjoint_matrix(inverse(x)) * system.lift(xi, u).coords();
  const Vec3<Scalar> rhs = system.lift(system.phi(x, xi), system.psi(x, u)).coords();
  return (lhs - rhs).template lpNorm<Eigen::Infinity>();
}

}  // namespace eqf
