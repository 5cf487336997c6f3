#pragma once

#include "eqf/system.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace eqf {

/// Filter gains: state-cost rate Q (3x3) and output information weight R
/// (2n x 2n). Both must be symmetric with no negative eigenvalues; zero is
/// accepted so open-loop and no-update configurations stay expressible.
template <typename Scalar>
class GainConfig {
public:
  GainConfig(const Mat3<Scalar>& q, const MatX<Scalar>& r) : q_(q), r_(r) {
    validate(q_, "Q");
    if (r_.rows() != r_.cols()) {
      throw std::invalid_argument("GainConfig: R must be square");
    }
    validate(r_, "R");
  }

  [[nodiscard]] const Mat3<Scalar>& q() const { return q_; }
  [[nodiscard]] const MatX<Scalar>& r() const { return r_; }

  template <typename Other>
  [[nodiscard]] GainConfig<Other> cast() const {
    return GainConfig<Other>(q_.template cast<Other>(), r_.template cast<Other>());
  }

private:
  static void validate(const MatX<Scalar>& m, const char* name) {
    const Scalar scale = std::max(Scalar(1), m.template lpNorm<Eigen::Infinity>());
    const Scalar sym_tol =
        std::max(Scalar(1e-12), Scalar(16) * std::numeric_limits<Scalar>::epsilon()) * scale;
    if ((m - m.transpose()).template lpNorm<Eigen::Infinity>() > sym_tol) {
      throw std::invalid_argument(std::string("GainConfig: ") + name + " is not symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<MatX<Scalar>> eig(m, Eigen::EigenvaluesOnly);
    const Scalar eig_tol =
        std::max(Scalar(1e-12), Scalar(64) * std::numeric_limits<Scalar>::epsilon()) * scale;
    if (eig.eigenvalues().minCoeff() < -eig_tol) {
      throw std::invalid_argument(std::string("GainConfig: ") + name +
                                  " has a negative eigenvalue");
    }
  }

  Mat3<Scalar> q_;
  MatX<Scalar> r_;
};

/// Complete filter state: group-valued estimate, covariance-like matrix in
/// chart coordinates, the chart itself, gains, and elapsed time. A plain
/// value; stepping returns a new one.
template <typename Scalar>
struct FilterState {
  GroupElement<Scalar> x_hat;
  Mat3<Scalar> sigma;
  Chart<Scalar> chart;
  GainConfig<Scalar> gains;
  Scalar time{0};
};

/// Estimated system state phi(X_hat, origin).
template <typename Scalar>
[[nodiscard]] SystemState<Scalar> state_estimate(const FilterState<Scalar>& state) {
  return phi(state.x_hat, state.chart.origin());
}

/// State matrix of the linearised error dynamics in chart coordinates:
/// the composition (d forward at origin) * (orbit differential, identity in
/// body form) * (lift differential through the chart at the transformed
/// input psi(X_hat^{-1}, u)). Identically zero whenever the lift ignores the
/// state, as in the localisation system.
template <typename Scalar>
[[nodiscard]] Mat3<Scalar> state_matrix(const EquivariantSystem<Scalar>& system,
                                        const FilterState<Scalar>& state,
                                        const AlgebraVector<Scalar>& u) {
  const AlgebraVector<Scalar> w = system.psi(inverse(state.x_hat), u);
  return state.chart.d_forward_at_origin() * system.lift_chart_differential(state.chart, w);
}

/// Output matrix of the linearised innovation in chart coordinates: the
/// derivative of s -> output(phi(X_hat, chart^{-1}(s e))) at zero, assembled
/// as (body output differential at the estimate) * Ad_{X_hat^{-1}} *
/// (d inverse at zero).
template <typename Scalar>
[[nodiscard]] MatX<Scalar> output_matrix(const EquivariantSystem<Scalar>& system,
                                         const FilterState<Scalar>& state) {
  return system.output_differential_body(state_estimate(state)) *
         adjoint_matrix(inverse(state.x_hat)) * state.chart.d_inverse_at_zero();
}

template <typename Scalar>
struct Linearisation {
  Mat3<Scalar> a;
  MatX<Scalar> c;
};

template <typename Scalar>
[[nodiscard]] Linearisation<Scalar> linearise(const EquivariantSystem<Scalar>& system,
                                              const FilterState<Scalar>& state,
                                              const AlgebraVector<Scalar>& u) {
  return Linearisation<Scalar>{state_matrix(system, state, u), output_matrix(system, state)};
}

namespace detail {

template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> correction_from(const FilterState<Scalar>& state,
                                                    const MatX<Scalar>& c,
                                                    const VecX<Scalar>& residual) {
  const Vec3<Scalar> chart_coords =
      state.sigma * c.transpose() * state.gains.r() * residual;
  const Mat3<Scalar> lift_back =
      action_differential_inverse(state.chart.origin()).matrix * state.chart.d_inverse_at_zero();
  return AlgebraVector<Scalar>::FromCoords(Vec3<Scalar>(lift_back * chart_coords));
}

}  // namespace detail

/// Innovation-driven correction term: the algebra element
/// (orbit-differential right inverse) * (d inverse at zero) * Sigma C^T R *
/// (y - predicted output).
template <typename Scalar>
[[nodiscard]] AlgebraVector<Scalar> correction(const EquivariantSystem<Scalar>& system,
                                               const FilterState<Scalar>& state,
                                               const VecX<Scalar>& y) {
  if (y.size() != system.output_dim()) {
    throw std::invalid_argument("correction: measurement size does not match the system");
  }
  const VecX<Scalar> residual = y - system.output(state_estimate(state));
  return detail::correction_from(state, output_matrix(system, state), residual);
}

/// One multiplicative Euler step of length dt:
///
///   X_hat <- exp(dt Delta) * X_hat * exp(dt lift)
///   Sigma <- Sigma + dt (A Sigma + Sigma A^T + Q - Sigma C^T R C Sigma)
///
/// with Sigma re-symmetrised afterwards. The split update is first-order
/// consistent with the continuous observer and keeps the estimate exactly on
/// the group. Throws NonFiniteStateError if any entry stops being finite.
template <typename Scalar>
[[nodiscard]] FilterState<Scalar> filter_step(const EquivariantSystem<Scalar>& system,
                                              const FilterState<Scalar>& state,
                                              const AlgebraVector<Scalar>& u,
                                              const VecX<Scalar>& y, Scalar dt) {
  if (y.size() != system.output_dim()) {
    throw std::invalid_argument("filter_step: measurement size does not match the system");
  }
  if (state.gains.r().rows() != system.output_dim()) {
    throw std::invalid_argument("filter_step: R size does not match the system output");
  }

  const Linearisation<Scalar> lin = linearise(system, state, u);
  const VecX<Scalar> residual = y - system.output(state_estimate(state));
  const AlgebraVector<Scalar> delta = detail::correction_from(state, lin.c, residual);
  const AlgebraVector<Scalar> lambda = system.lift(state_estimate(state), u);

  FilterState<Scalar> next = state;
  next.x_hat =
      compose(exp(dt * delta), compose(state.x_hat, exp(dt * lambda)));
  const Mat3<Scalar> gain_term =
      state.sigma * lin.c.transpose() * state.gains.r() * lin.c * state.sigma;
  const Mat3<Scalar> sigma_rate =
      lin.a * state.sigma + state.sigma * lin.a.transpose() + state.gains.q() - gain_term;
  const Mat3<Scalar> sigma_next = state.sigma + dt * sigma_rate;
  next.sigma = ((sigma_next + sigma_next.transpose()) / Scalar(2)).eval();
  next.time = state.time + dt;

  const bool finite = std::isfinite(next.x_hat.theta) && next.x_hat.x.allFinite() &&
                      next.sigma.allFinite();
  if (!finite) {
    std::ostringstream msg;
    msg << "filter_step: non-finite state after step ending at t=" << double(next.time);
    throw NonFiniteStateError(msg.str());
  }
  return next;
}

}  // namespace eqf
