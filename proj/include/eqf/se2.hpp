#pragma once

#include "eqf/core.hpp"

namespace eqf {

/// Element of SE(2), stored as a wrapped heading angle together with a planar
/// translation. The angle is kept in [-pi, pi) by every constructor and
/// operation so that comparisons never have to reason about branch cuts.
template <typename Scalar>
struct GroupElement {
  Scalar theta{0};
  Vec2<Scalar> x{Vec2<Scalar>::Zero()};

  GroupElement() = default;
  GroupElement(Scalar theta_in, const Vec2<Scalar>& x_in)
      : theta(wrap_angle(theta_in)), x(x_in) {}
  GroupElement(Scalar theta_in, Scalar x0, Scalar x1)
      : theta(wrap_angle(theta_in)), x(x0, x1) {}

  [[nodiscard]] static GroupElement Identity() { return GroupElement(); }

  /// 2x2 rotation matrix of the heading.
  [[nodiscard]] Mat2<Scalar> rotation() const {
    const Scalar c = std::cos(theta);
    const Scalar s = std::sin(theta);
    Mat2<Scalar> r;
    r << c, -s, s, c;
    return r;
  }

  /// 3x3 homogeneous matrix [R x; 0 1].
  [[nodiscard]] Mat3<Scalar> matrix() const {
    Mat3<Scalar> m = Mat3<Scalar>::Identity();
    m.template topLeftCorner<2, 2>() = rotation();
    m.template topRightCorner<2, 1>() = x;
    return m;
  }

  template <typename Other>
  [[nodiscard]] GroupElement<Other> cast() const {
    return GroupElement<Other>(static_cast<Other>(theta), x.template cast<Other>());
  }
};

/// Element of se(2) in coordinates (omega, v1, v2): angular rate followed by
/// the linear velocity components.
template <typename Scalar>
struct AlgebraVector {
  Scalar omega{0};
  Vec2<Scalar> v{Vec2<Scalar>::Zero()};

  AlgebraVector() = default;
  AlgebraVector(Scalar omega_in, const Vec2<Scalar>& v_in) : omega(omega_in), v(v_in) {}
  AlgebraVector(Scalar omega_in, Scalar v0, Scalar v1) : omega(omega_in), v(v0, v1) {}

  [[nodiscard]] static AlgebraVector Zero() { return AlgebraVector(); }

  [[nodiscard]] Vec3<Scalar> coords() const { return Vec3<Scalar>(omega, v.x(), v.y()); }

  [[nodiscard]] static AlgebraVector FromCoords(const Vec3<Scalar>& c) {
    return AlgebraVector(c(0), c(1), c(2));
  }

  [[nodiscard]] Scalar sup_norm() const {
    return std::max(std::abs(omega), std::max(std::abs(v.x()), std::abs(v.y())));
  }

  template <typename Other>
  [[nodiscard]] AlgebraVector<Other> cast() const {
    return AlgebraVector<Other>(static_cast<Other>(omega), v.template cast<Other>());
  }
};

template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> operator+(const AlgebraVector<Scalar>& a,
                                              const AlgebraVector<Scalar>& b) {
  return AlgebraVector<Scalar>(a.omega + b.omega, Vec2<Scalar>(a.v + b.v));
}

template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> operator-(const AlgebraVector<Scalar>& a,
                                              const AlgebraVector<Scalar>& b) {
  return AlgebraVector<Scalar>(a.omega - b.omega, Vec2<Scalar>(a.v - b.v));
}

template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> operator*(Scalar s, const AlgebraVector<Scalar>& a) {
  return AlgebraVector<Scalar>(s * a.omega, Vec2<Scalar>(s * a.v));
}

/// Matrix form of an algebra element: [omega K, v; 0, 0] with K the 2x2
/// skew generator.
template <typename Scalar>
[[nodiscard]] Mat3<Scalar> wedge(const AlgebraVector<Scalar>& u) {
  Mat3<Scalar> m = Mat3<Scalar>::Zero();
  m(0, 1) = -u.omega;
  m(1, 0) = u.omega;
  m(0, 2) = u.v.x();
  m(1, 2) = u.v.y();
  return m;
}

template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> vee(const Mat3<Scalar>& m) {
  return AlgebraVector<Scalar>(m(1, 0), m(0, 2), m(1, 2));
}

template <typename Scalar>
[[nodiscard]] GroupElement<Scalar> compose(const GroupElement<Scalar>& a,
                                           const GroupElement<Scalar>& b) {
  return GroupElement<Scalar>(a.theta + b.theta, Vec2<Scalar>(a.x + a.rotation() * b.x));
}

template <typename Scalar>
[[nodiscard]] GroupElement<Scalar> inverse(const GroupElement<Scalar>& a) {
  const GroupElement<Scalar> neg(-a.theta, Vec2<Scalar>::Zero());
  return GroupElement<Scalar>(-a.theta, Vec2<Scalar>(-(neg.rotation() * a.x)));
}

namespace detail {

// Coefficients A = sin(w)/w and B = (1-cos(w))/w of the translation part of
// the exponential. The closed form uses the half-angle identity
// 1 - cos(w) = 2 sin^2(w/2); a short series handles |w| below the switch
// point where the quotients would start to lose digits.
template <typename Scalar>
struct ExpCoefficients {
  Scalar a;
  Scalar b;
};

inline constexpr double kSmallAngleSwitch = 1e-4;

template <typename Scalar>
[[nodiscard]] ExpCoefficients<Scalar> exp_coefficients(Scalar w) {
  if (std::abs(w) < Scalar(kSmallAngleSwitch)) {
    const Scalar w2 = w * w;
    return {Scalar(1) - w2 / Scalar(6), w / Scalar(2) - w2 * w / Scalar(24)};
  }
  const Scalar sh = std::sin(w / Scalar(2));
  return {std::sin(w) / w, Scalar(2) * sh * sh / w};
}

}  // namespace detail

/// Group exponential. The heading is the angular rate wrapped; the translation
/// is V(omega) v with V the usual SE(2) left Jacobian of the translation part.
template <typename Scalar>
[[nodiscard]] GroupElement<Scalar> exp(const AlgebraVector<Scalar>& u) {
  const auto [a, b] = detail::exp_coefficients(u.omega);
  Mat2<Scalar> vmat;
  vmat << a, -b, b, a;
  return GroupElement<Scalar>(u.omega, Vec2<Scalar>(vmat * u.v));
}

/// Group logarithm, inverse of exp on the domain theta in (-pi, pi).
///
/// Throws CutLocusError when theta is within 1e-9 of the branch point -pi
/// (equivalently, of +pi), where the rotation logarithm is ambiguous.
template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> log(const GroupElement<Scalar>& g) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (std::abs(wrap_angle(g.theta + pi)) < Scalar(1e-9)) {
    throw CutLocusError("log: heading within 1e-9 of the -pi branch point");
  }
  const Scalar w = g.theta;
  // V(w)^{-1} in closed form: diagonal (w/2) cot(w/2), off-diagonal +-w/2.
  Scalar diag;
  if (std::abs(w) < Scalar(detail::kSmallAngleSwitch)) {
    diag = Scalar(1) - w * w / Scalar(12);
  } else {
    const Scalar h = w / Scalar(2);
    diag = h * std::cos(h) / std::sin(h);
  }
  const Scalar off = w / Scalar(2);
  Mat2<Scalar> vinv;
  vinv << diag, off, -off, diag;
  return AlgebraVector<Scalar>(w, Vec2<Scalar>(vinv * g.x));
}

/// Matrix of Ad_X acting on algebra coordinates (omega, v1, v2):
/// Ad_X (omega, v) = (omega, R v - omega K x) with K the skew generator.
template <typename Scalar>
[[nodiscard]] Mat3<Scalar> adjoint_matrix(const GroupElement<Scalar>& g) {
  Mat3<Scalar> ad = Mat3<Scalar>::Zero();
  ad(0, 0) = Scalar(1);
  ad(1, 0) = g.x.y();
  ad(2, 0) = -g.x.x();
  ad.template bottomRightCorner<2, 2>() = g.rotation();
  return ad;
}

/// Componentwise sup distance with the angle difference wrapped.
template <typename Scalar>
[[nodiscard]] Scalar group_distance(const GroupElement<Scalar>& a, const GroupElement<Scalar>& b) {
  const Scalar dth = std::abs(angle_difference(a.theta, b.theta));
  return std::max(dth, Scalar((a.x - b.x).template lpNorm<Eigen::Infinity>()));
}

using GroupElementd = GroupElement<double>;
using GroupElementf = GroupElement<float>;
using AlgebraVectord = AlgebraVector<double>;
using AlgebraVectorf = AlgebraVector<float>;

}  // namespace eqf
