#include "doctest.h"

#include "eqf/filter.hpp"
#include "eqf/symmetry.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace {

using eqf::AlgebraVectord;
using eqf::GroupElementd;
using testutil::Sampler;

[[nodiscard]] eqf::LandmarkSet<double> landmarks3() {
  return eqf::LandmarkSet<double>({eqf::Vec2<double>(2.0, 1.0), eqf::Vec2<double>(-1.0, 3.0),
                                   eqf::Vec2<double>(0.5, -2.0)});
}

[[nodiscard]] eqf::FilterState<double> make_filter(const eqf::EquivariantSystem<double>& system,
                                                   const GroupElementd& origin_pose,
                                                   eqf::ChartKind kind, double q_scale,
                                                   double r_scale, double sigma_scale) {
  const Eigen::Index m = system.output_dim();
  return eqf::FilterState<double>{
      GroupElementd::Identity(),
      eqf::Mat3<double>(sigma_scale * eqf::Mat3<double>::Identity()),
      system.make_chart(kind, eqf::SystemState<double>(origin_pose)),
      eqf::GainConfig<double>(eqf::Mat3<double>(q_scale * eqf::Mat3<double>::Identity()),
                              eqf::MatX<double>(r_scale * eqf::MatX<double>::Identity(m, m))),
      0.0};
}

[[nodiscard]] Eigen::Matrix3d heading_block(double theta) {
  Eigen::Matrix3d b = Eigen::Matrix3d::Identity();
  b.block<2, 2>(1, 1) = testutil::rot2(theta);
  return b;
}

/// Localisation system with the lift biased by the offset from a fixed
/// reference pose, read through a chart. The bias is linear in the reference
/// coordinates, so the state matrix has a closed form to test the chart
/// machinery against. Deliberately not equivariant; only the linearisation
/// path is exercised.
class ChartLinearLiftSystem : public eqf::Se2LocalisationSystem<double> {
public:
  ChartLinearLiftSystem(eqf::LandmarkSet<double> landmarks,
                        const eqf::SystemState<double>& reference, const Eigen::Matrix3d& gain)
      : Se2LocalisationSystem(std::move(landmarks)),
        reference_(eqf::component_chart(reference)),
        gain_(gain) {}

  [[nodiscard]] eqf::TangentVector<double> dynamics(
      const eqf::SystemState<double>& xi, const AlgebraVectord& u) const override {
    return eqf::EquivariantSystem<double>::dynamics(xi, u);
  }

  [[nodiscard]] AlgebraVectord lift(const eqf::SystemState<double>& xi,
                                    const AlgebraVectord& u) const override {
    return AlgebraVectord::FromCoords(
        eqf::Vec3<double>(u.coords() + gain_ * reference_.forward(xi)));
  }

  [[nodiscard]] eqf::Mat3<double> lift_chart_differential(
      const eqf::Chart<double>& chart, const AlgebraVectord& w) const override {
    return eqf::EquivariantSystem<double>::lift_chart_differential(chart, w);
  }

private:
  eqf::Chart<double> reference_;
  Eigen::Matrix3d gain_;
};

}  // namespace

TEST_SUITE("eqf_filter") {

TEST_CASE("gain validation accepts the psd boundary and rejects bad shapes") {
  const eqf::Mat3<double> q0 = eqf::Mat3<double>::Zero();
  const eqf::MatX<double> r0 = eqf::MatX<double>::Zero(6, 6);
  CHECK_NOTHROW((void)eqf::GainConfig<double>(q0, r0));

  eqf::Mat3<double> asym = eqf::Mat3<double>::Identity();
  asym(0, 1) = 0.3;
  CHECK_THROWS_AS((void)eqf::GainConfig<double>(asym, r0), std::invalid_argument);

  eqf::Mat3<double> indefinite = eqf::Mat3<double>::Identity();
  indefinite(2, 2) = -0.1;
  CHECK_THROWS_AS((void)eqf::GainConfig<double>(indefinite, r0), std::invalid_argument);

  const eqf::MatX<double> not_square = eqf::MatX<double>::Zero(6, 4);
  CHECK_THROWS_AS((void)eqf::GainConfig<double>(q0, not_square), std::invalid_argument);
}

TEST_CASE("the state matrix vanishes for the state independent lift") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  Sampler sampler(401);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    eqf::FilterState<double> f =
        make_filter(system, sampler.pose(),
                    (k % 2 == 0) ? eqf::ChartKind::Component : eqf::ChartKind::Exponential,
                    0.2, 0.1, 1.0);
    f.x_hat = sampler.pose();
    const AlgebraVectord u = (k % 5 == 0) ? AlgebraVectord::Zero() : sampler.algebra();
    worst = std::max(worst, eqf::state_matrix(system, f, u).cwiseAbs().maxCoeff());
  }
  CHECK_EQ(worst, 0.0);
}

TEST_CASE("the state matrix composes chart differentials for a chart linear lift") {
  Eigen::Matrix3d gain;
  gain << 0.3, -0.1, 0.2, 0.05, 0.4, -0.25, -0.15, 0.1, 0.35;
  const eqf::SystemState<double> reference(GroupElementd(0.3, 0.4, -0.2));
  const ChartLinearLiftSystem system(landmarks3(), reference, gain);

  const double theta_exp = 0.9;
  eqf::FilterState<double> on_exp =
      make_filter(system, GroupElementd(theta_exp, 1.2, -0.7), eqf::ChartKind::Exponential,
                  0.2, 0.1, 1.0);
  const AlgebraVectord u(0.4, eqf::Vec2<double>(0.5, -0.3));
  const Eigen::Matrix3d a_exp = eqf::state_matrix(system, on_exp, u);
  const Eigen::Matrix3d a_exp_hand = gain * heading_block(theta_exp);
  CHECK_LE((a_exp - a_exp_hand).cwiseAbs().maxCoeff(), 1e-8);

  const double theta_comp = -0.6;
  eqf::FilterState<double> on_comp =
      make_filter(system, GroupElementd(theta_comp, 0.8, 0.3), eqf::ChartKind::Component,
                  0.2, 0.1, 1.0);
  const Eigen::Matrix3d a_comp = eqf::state_matrix(system, on_comp, u);
  const Eigen::Matrix3d a_comp_hand = heading_block(theta_comp) * gain;
  CHECK_LE((a_comp - a_comp_hand).cwiseAbs().maxCoeff(), 1e-8);

  // The transformed input enters the lift additively, so it must drop out of
  // the differential entirely.
  const Eigen::Matrix3d a_other =
      eqf::state_matrix(system, on_comp, AlgebraVectord(-1.1, eqf::Vec2<double>(0.2, 2.0)));
  CHECK_LE((a_comp - a_other).cwiseAbs().maxCoeff(), 1e-9);
}

TEST_CASE("the output matrix matches the pinned identity configuration") {
  const eqf::Se2LocalisationSystem<double> system(
      eqf::LandmarkSet<double>({eqf::Vec2<double>(1.0, 2.0)}));
  const eqf::FilterState<double> f =
      make_filter(system, GroupElementd::Identity(), eqf::ChartKind::Component, 0.2, 0.1, 1.0);
  const eqf::MatX<double> c = eqf::output_matrix(system, f);

  Eigen::Matrix<double, 2, 3> expected;
  expected << 2.0, -1.0, 0.0, -1.0, 0.0, -1.0;
  CHECK_LE((c - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_CASE("the output matrix agrees with differencing through chart and action") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  Sampler sampler(402);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    eqf::FilterState<double> f =
        make_filter(system, sampler.pose(),
                    (k % 2 == 0) ? eqf::ChartKind::Component : eqf::ChartKind::Exponential,
                    0.2, 0.1, 1.0);
    f.x_hat = sampler.pose();
    const eqf::MatX<double> c = eqf::output_matrix(system, f);

    const std::function<eqf::VecX<double>(const eqf::VecX<double>&)> through =
        [&system, &f](const eqf::VecX<double>& s) -> eqf::VecX<double> {
      const eqf::SystemState<double> point = f.chart.inverse(eqf::Vec3<double>(s));
      return system.output(eqf::phi(f.x_hat, point));
    };
    const eqf::MatX<double> fd =
        eqf::numerical_differential<double>(through, eqf::VecX<double>::Zero(3));
    worst = std::max(worst, (c - fd).cwiseAbs().maxCoeff());
  }
  CHECK_LE(worst, 1e-8);
}

TEST_CASE("a coincident landmark only couples to translation") {
  const eqf::Vec2<double> site(1.5, -0.8);
  const eqf::Se2LocalisationSystem<double> system(eqf::LandmarkSet<double>({site}));
  eqf::FilterState<double> f =
      make_filter(system, GroupElementd(0.0, site(0), site(1)), eqf::ChartKind::Component,
                  0.2, 0.1, 1.0);
  const eqf::MatX<double> c = eqf::output_matrix(system, f);
  CHECK_EQ(c.col(0).cwiseAbs().maxCoeff(), 0.0);
  CHECK_LE((c.rightCols(2) + Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_CASE("the output matrix transports contravariantly to the transition matrix") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  Sampler sampler(403);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    eqf::FilterState<double> f =
        make_filter(system, sampler.pose(), eqf::ChartKind::Component, 0.2, 0.1, 1.0);
    f.x_hat = sampler.pose();

    const GroupElementd z = sampler.pose(2.0, 2.0);
    const eqf::SystemState<double> target_origin =
        eqf::phi(eqf::inverse(z), f.chart.origin());
    const eqf::Chart<double> target = eqf::component_chart(target_origin);
    const eqf::FilterState<double> moved = eqf::transport_filter(f, target);

    const eqf::MatX<double> c = eqf::output_matrix(system, f);
    const eqf::MatX<double> c_bar = eqf::output_matrix(system, moved);
    const eqf::Mat3<double> m = eqf::transition_matrix(f.chart, target, z);
    worst = std::max(worst, (eqf::MatX<double>(c_bar * m) - c).cwiseAbs().maxCoeff());
  }
  CHECK_LE(worst, 1e-8);
}

TEST_CASE("corrections vanish without innovation or without uncertainty") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> f =
      make_filter(system, GroupElementd(0.4, 0.7, -0.2), eqf::ChartKind::Component, 0.2, 0.1,
                  1.0);
  f.x_hat = GroupElementd(0.3, 0.5, 0.6);

  const eqf::VecX<double> predicted = system.output(eqf::state_estimate(f));
  CHECK_EQ(eqf::correction(system, f, predicted).sup_norm(), 0.0);

  eqf::FilterState<double> certain = f;
  certain.sigma = eqf::Mat3<double>::Zero();
  eqf::VecX<double> off = predicted;
  off.array() += 0.25;
  CHECK_EQ(eqf::correction(system, certain, off).sup_norm(), 0.0);
}

TEST_CASE("corrections transport by the adjoint of the origin change") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  Sampler sampler(404);
  eqf::FilterState<double> f =
      make_filter(system, GroupElementd(0.2, 0.4, -0.1), eqf::ChartKind::Component, 0.2, 0.1,
                  0.8);
  f.x_hat = GroupElementd(-0.3, 0.2, 0.5);

  const GroupElementd z(0.6, -1.0, 0.4);
  const eqf::Chart<double> target =
      eqf::component_chart(eqf::phi(eqf::inverse(z), f.chart.origin()));
  const eqf::FilterState<double> moved = eqf::transport_filter(f, target);
  CHECK_LE(eqf::group_distance(moved.x_hat, eqf::compose(z, f.x_hat)), 1e-12);

  eqf::VecX<double> y = system.output(eqf::state_estimate(f));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) += 0.1 * sampler.uniform(-1, 1);
  }
  const AlgebraVectord delta = eqf::correction(system, f, y);
  const AlgebraVectord delta_bar = eqf::correction(system, moved, y);
  const eqf::Vec3<double> expected = eqf::adjoint_matrix(z) * delta.coords();
  CHECK_LE((delta_bar.coords() - expected).cwiseAbs().maxCoeff(), 1e-9);
}

TEST_CASE("a step with no input, no innovation, and no process gain only contracts sigma") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> f =
      make_filter(system, GroupElementd(0.4, 0.7, -0.2), eqf::ChartKind::Component, 0.0, 0.1,
                  1.0);
  f.x_hat = GroupElementd(0.3, 0.5, 0.6);

  const double dt = 0.1;
  const eqf::VecX<double> predicted = system.output(eqf::state_estimate(f));
  const eqf::FilterState<double> next =
      eqf::filter_step(system, f, AlgebraVectord::Zero(), predicted, dt);

  CHECK_EQ(next.x_hat.theta, f.x_hat.theta);
  CHECK_EQ(next.x_hat.x(0), f.x_hat.x(0));
  CHECK_EQ(next.x_hat.x(1), f.x_hat.x(1));

  const eqf::MatX<double> c = eqf::output_matrix(system, f);
  const Eigen::Matrix3d drop =
      f.sigma * c.transpose() * f.gains.r() * c * f.sigma;
  const Eigen::Matrix3d raw = f.sigma - dt * drop;
  const Eigen::Matrix3d expected = 0.5 * (raw + raw.transpose());
  CHECK_LE((next.sigma - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST_CASE("with zero gains the filter integrates the input open loop") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> f =
      make_filter(system, GroupElementd(0.1, -0.4, 0.3), eqf::ChartKind::Component, 0.0, 0.0,
                  1.0);
  f.x_hat = GroupElementd(0.2, 1.0, -0.5);
  const eqf::Mat3<double> sigma0 = f.sigma;

  const double dt = 0.1;
  const AlgebraVectord u(0.0, eqf::Vec2<double>(0.4, 0.5));
  const Eigen::Matrix3d step = testutil::series_exp(dt * eqf::wedge(u));
  Eigen::Matrix3d expected = testutil::homogeneous(f.x_hat);

  eqf::FilterState<double> state = f;
  const eqf::VecX<double> y = eqf::VecX<double>::Zero(system.output_dim());
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    state = eqf::filter_step(system, state, u, y, dt);
    expected = Eigen::Matrix3d(expected * step);
    worst = std::max(worst,
                     (testutil::homogeneous(state.x_hat) - expected).cwiseAbs().maxCoeff());
  }
  CHECK_LE(worst, 1e-12);
  CHECK_EQ((state.sigma - sigma0).cwiseAbs().maxCoeff(), 0.0);
}

TEST_CASE("one worked step reproduces the written update") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> f =
      make_filter(system, GroupElementd::Identity(), eqf::ChartKind::Component, 0.0, 0.0, 0.0);
  f.sigma = Eigen::Vector3d(0.5, 0.7, 0.9).asDiagonal();
  f.gains = eqf::GainConfig<double>(
      eqf::Mat3<double>(Eigen::Vector3d(0.05, 0.02, 0.03).asDiagonal()),
      eqf::MatX<double>(0.4 * eqf::MatX<double>::Identity(6, 6)));

  const double dt = 0.1;
  const AlgebraVectord u(0.3, eqf::Vec2<double>(0.4, -0.2));
  eqf::VecX<double> y(6);
  y << 2.1, 0.9, -1.2, 3.2, 0.4, -2.1;

  // Hand assembly: with the identity estimate the output blocks are the
  // landmarks themselves and every chart factor is the identity.
  const std::vector<eqf::Vec2<double>>& pts = system.landmarks().points();
  Eigen::Matrix<double, 6, 3> c_hand;
  eqf::VecX<double> residual(6);
  for (int i = 0; i < 3; ++i) {
    const eqf::Vec2<double> p = pts[static_cast<size_t>(i)];
    c_hand.row(2 * i) << p.y(), -1.0, 0.0;
    c_hand.row(2 * i + 1) << -p.x(), 0.0, -1.0;
    residual.segment<2>(2 * i) = y.segment<2>(2 * i) - p;
  }
  const Eigen::Vector3d delta_coords =
      f.sigma * c_hand.transpose() * f.gains.r() * residual;

  const Eigen::Matrix3d expected_pose =
      testutil::series_exp(dt * eqf::wedge(AlgebraVectord::FromCoords(delta_coords))) *
      testutil::homogeneous(f.x_hat) * testutil::series_exp(dt * eqf::wedge(u));
  const Eigen::Matrix3d gain_term =
      f.sigma * c_hand.transpose() * f.gains.r() * c_hand * f.sigma;
  const Eigen::Matrix3d raw = f.sigma + dt * (f.gains.q() - gain_term);
  const Eigen::Matrix3d expected_sigma = 0.5 * (raw + raw.transpose());

  const eqf::FilterState<double> next = eqf::filter_step(system, f, u, y, dt);
  CHECK_LE((testutil::homogeneous(next.x_hat) - expected_pose).cwiseAbs().maxCoeff(), 1e-12);
  CHECK_LE((next.sigma - expected_sigma).cwiseAbs().maxCoeff(), 1e-12);
  CHECK_EQ(next.time, dt);
}

TEST_CASE("measurement shape and finiteness are enforced") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> f =
      make_filter(system, GroupElementd::Identity(), eqf::ChartKind::Component, 0.2, 0.1, 1.0);

  const AlgebraVectord u = AlgebraVectord::Zero();
  const eqf::VecX<double> short_y = eqf::VecX<double>::Zero(4);
  CHECK_THROWS_AS((void)eqf::correction(system, f, short_y), std::invalid_argument);
  CHECK_THROWS_AS((void)eqf::filter_step(system, f, u, short_y, 0.1), std::invalid_argument);

  eqf::FilterState<double> wrong_r = f;
  wrong_r.gains = eqf::GainConfig<double>(eqf::Mat3<double>::Identity(),
                                          eqf::MatX<double>::Identity(4, 4));
  const eqf::VecX<double> y6 = eqf::VecX<double>::Zero(6);
  CHECK_THROWS_AS((void)eqf::filter_step(system, wrong_r, u, y6, 0.1), std::invalid_argument);

  eqf::VecX<double> bad = system.output(eqf::state_estimate(f));
  bad(0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)eqf::filter_step(system, f, u, bad, 0.1), eqf::NonFiniteStateError);
}

TEST_CASE("the estimate is the group element acting on the chart origin") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());

  eqf::FilterState<double> anchored =
      make_filter(system, GroupElementd(0.7, 2.0, -1.5), eqf::ChartKind::Component, 0.2, 0.1,
                  1.0);
  CHECK_LE(eqf::state_distance(eqf::state_estimate(anchored), anchored.chart.origin()), 1e-15);

  eqf::FilterState<double> at_identity =
      make_filter(system, GroupElementd::Identity(), eqf::ChartKind::Component, 0.2, 0.1, 1.0);
  at_identity.x_hat = GroupElementd(0.4, 1.0, 2.0);
  CHECK_LE(eqf::group_distance(eqf::state_estimate(at_identity).pose, at_identity.x_hat),
           1e-15);

  // Transport changes the chart bookkeeping but never the estimate.
  const GroupElementd z(0.5, 0.3, -0.8);
  const eqf::Chart<double> target =
      eqf::component_chart(eqf::phi(eqf::inverse(z), anchored.chart.origin()));
  const eqf::FilterState<double> moved = eqf::transport_filter(anchored, target);
  CHECK_LE(eqf::state_distance(eqf::state_estimate(moved), eqf::state_estimate(anchored)),
           1e-12);
}

TEST_CASE("sigma stays symmetric and nearly positive along a run") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> state =
      make_filter(system, GroupElementd::Identity(), eqf::ChartKind::Component, 0.2, 0.1, 1.0);
  state.x_hat = GroupElementd(0.3, 0.5, -0.4);

  const eqf::SystemState<double> truth0(GroupElementd(0.0, 0.0, 0.0));
  const AlgebraVectord u(0.0, eqf::Vec2<double>(0.4, 0.5));
  eqf::SystemState<double> truth = truth0;
  const double dt = 0.1;
  double min_eig = std::numeric_limits<double>::infinity();
  double worst_asym = 0;
  for (int k = 0; k < 200; ++k) {
    const eqf::VecX<double> y = system.output(truth);
    state = eqf::filter_step(system, state, u, y, dt);
    truth = eqf::advance(truth, dt * u);
    worst_asym =
        std::max(worst_asym, (state.sigma - state.sigma.transpose()).cwiseAbs().maxCoeff());
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(state.sigma,
                                                             Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
  }
  CHECK_EQ(worst_asym, 0.0);
  CHECK_GT(min_eig, -1e-12);
}

TEST_CASE("stepping commutes with moving to another chart") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> here =
      make_filter(system, GroupElementd::Identity(), eqf::ChartKind::Component, 0.2, 0.1, 1.0);
  here.x_hat = GroupElementd(0.25, 0.4, -0.6);

  constexpr double kQuarterTurn = 0.78539816339744831;
  const eqf::Chart<double> there = eqf::component_chart(
      eqf::SystemState<double>(GroupElementd(kQuarterTurn, 1.0, 2.0)));

  const AlgebraVectord u(0.2, eqf::Vec2<double>(0.4, 0.5));
  const eqf::SystemState<double> truth(GroupElementd(0.1, 0.7, -0.3));
  const eqf::VecX<double> y = system.output(truth);
  const double dt = 0.1;

  const eqf::FilterState<double> step_then_move =
      eqf::transport_filter(eqf::filter_step(system, here, u, y, dt), there);
  const eqf::FilterState<double> move_then_step =
      eqf::filter_step(system, eqf::transport_filter(here, there), u, y, dt);

  CHECK_LE(eqf::group_distance(step_then_move.x_hat, move_then_step.x_hat), 1e-9);
  CHECK_LE((step_then_move.sigma - move_then_step.sigma).cwiseAbs().maxCoeff(), 1e-9);
  CHECK_EQ(step_then_move.time, move_then_step.time);
}

TEST_CASE("feeding back the predicted output is a fixed point of the correction") {
  const eqf::Se2LocalisationSystem<double> system(landmarks3());
  eqf::FilterState<double> state =
      make_filter(system, GroupElementd(0.3, 1.0, -2.0), eqf::ChartKind::Component, 0.0, 0.1,
                  1.0);
  state.x_hat = GroupElementd(0.5, 0.2, 0.1);
  const GroupElementd x0 = state.x_hat;

  const double dt = 0.1;
  const AlgebraVectord u(0.3, eqf::Vec2<double>(0.4, 0.5));
  const Eigen::Matrix3d step = testutil::series_exp(dt * eqf::wedge(u));
  Eigen::Matrix3d expected = testutil::homogeneous(x0);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const eqf::VecX<double> y = system.output(eqf::state_estimate(state));
    state = eqf::filter_step(system, state, u, y, dt);
    expected = Eigen::Matrix3d(expected * step);
    worst = std::max(worst,
                     (testutil::homogeneous(state.x_hat) - expected).cwiseAbs().maxCoeff());
  }
  CHECK_LE(worst, 1e-12);
}

TEST_CASE("single precision steps stay finite") {
  const eqf::Se2LocalisationSystem<float> system(landmarks3().cast<float>());
  eqf::FilterState<float> state{
      eqf::GroupElementf(0.2f, 0.1f, -0.3f),
      eqf::Mat3<float>::Identity(),
      system.make_chart(eqf::ChartKind::Component,
                        eqf::SystemState<float>(eqf::GroupElementf::Identity())),
      eqf::GainConfig<float>(eqf::Mat3<float>(0.2f * eqf::Mat3<float>::Identity()),
                             eqf::MatX<float>(0.1f * eqf::MatX<float>::Identity(6, 6))),
      0.0f};

  const eqf::SystemState<float> truth(eqf::GroupElementf::Identity());
  const eqf::AlgebraVectorf u(0.1f, eqf::Vec2<float>(0.4f, 0.5f));
  for (int k = 0; k < 50; ++k) {
    state = eqf::filter_step(system, state, u, system.output(truth), 0.1f);
  }
  CHECK(std::isfinite(state.x_hat.theta));
  CHECK(state.sigma.allFinite());
}

}  // TEST_SUITE
