#pragma once

#include "eqf/se2.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

namespace testutil {

/// 2x2 rotation built directly from trigonometry, independent of the library.
[[nodiscard]] inline Eigen::Matrix2d rot2(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

/// 3x3 homogeneous pose matrix [R t; 0 1], again built from scratch so it can
/// serve as an oracle for the group operations.
[[nodiscard]] inline Eigen::Matrix3d homogeneous(double theta, double x, double y) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m.topLeftCorner<2, 2>() = rot2(theta);
  m(0, 2) = x;
  m(1, 2) = y;
  return m;
}

[[nodiscard]] inline Eigen::Matrix3d homogeneous(const eqf::GroupElementd& g) {
  return homogeneous(g.theta, g.x(0), g.x(1));
}

[[nodiscard]] inline eqf::GroupElementd from_homogeneous(const Eigen::Matrix3d& m) {
  return eqf::GroupElementd(std::atan2(m(1, 0), m(0, 0)), m(0, 2), m(1, 2));
}

/// Truncated matrix exponential series. Fifty terms leave the truncation error
/// far below double rounding for arguments up to size pi.
[[nodiscard]] inline Eigen::Matrix3d series_exp(const Eigen::Matrix3d& a, int terms = 50) {
  Eigen::Matrix3d sum = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
  for (int k = 1; k <= terms; ++k) {
    term = Eigen::Matrix3d(term * a / double(k));
    sum += term;
  }
  return sum;
}

/// Deterministic draws for property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  [[nodiscard]] double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  /// Heading bounded away from the wrap seam so expected values stay seam
  /// free; translations at desk scale.
  [[nodiscard]] eqf::GroupElementd pose(double span = 5.0, double angle_span = 3.0) {
    return eqf::GroupElementd(uniform(-angle_span, angle_span), uniform(-span, span),
                              uniform(-span, span));
  }

  [[nodiscard]] eqf::AlgebraVectord algebra(double omega_span = 3.0, double v_span = 3.0) {
    return eqf::AlgebraVectord(uniform(-omega_span, omega_span), uniform(-v_span, v_span),
                               uniform(-v_span, v_span));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace testutil
