#pragma once

#include "eqf/sim/run.hpp"

namespace eqf {

/// Per-step distances between a filter and the transported image of another
/// filter that, in exact arithmetic, it should shadow exactly.
struct DivergenceReport {
  std::vector<double> t;
  std::vector<double> pos_divergence;    // metres between the two estimates
  std::vector<double> ang_divergence;    // radians, wrapped
  std::vector<double> sigma_divergence;  // sup norm of Sigma_b - M Sigma_a M^T
  double max_pos{0};
  double max_ang{0};
  double max_sigma{0};
  Mat3<double> transition{Mat3<double>::Identity()};

  [[nodiscard]] size_t rows() const { return t.size(); }
};

/// Runs two filters over the identical scenario, one per chart, with the
/// second initialised as the exact transport of the first (same estimate,
/// conjugated Sigma and Q). Records how far the pair drifts apart step by
/// step. With matching charts the two runs are bitwise identical and every
/// divergence is exactly zero.
template <typename Scalar>
[[nodiscard]] DivergenceReport run_equivalence_experiment(const sim::ScenarioConfig& config,
                                                          const Chart<Scalar>& chart_a,
                                                          const Chart<Scalar>& chart_b) {
  sim::validate_scenario(config);
  const int steps = sim::step_count(config);

  const LandmarkSet<Scalar> landmarks =
      sim::draw_landmarks(config.landmark_count, config.landmark_seed).cast<Scalar>();
  const Se2LocalisationSystem<Scalar> system(landmarks);

  const auto truth = sim::integrate_truth<Scalar>(
      SystemState<Scalar>(config.initial_pose.cast<Scalar>()),
      config.velocity.cast<Scalar>(), Scalar(config.dt), steps);
  const auto measurements = sim::synthesize_measurements<Scalar>(
      truth, landmarks, Scalar(config.noise_std), noise_stream_seed(config.landmark_seed));

  const sim::FilterSetup& setup = config.filters.front();
  FilterState<Scalar> a =
      transport_filter(sim::detail::estimate_anchored_filter(setup, system), chart_a);
  FilterState<Scalar> b = transport_filter(a, chart_b);

  Mat3<Scalar> m = Mat3<Scalar>::Identity();
  if (!chart_a.same_as(chart_b)) {
    const GroupElement<Scalar> z =
        compose(inverse(chart_b.origin().pose), chart_a.origin().pose);
    m = transition_matrix(chart_a, chart_b, z);
  }

  DivergenceReport report;
  report.transition = m.template cast<double>();
  const AlgebraVector<Scalar> u = config.velocity.cast<Scalar>();

  const auto record_row = [&](int k) {
    report.t.push_back(double(k) * config.dt);
    const SystemState<Scalar> est_a = state_estimate(a);
    const SystemState<Scalar> est_b = state_estimate(b);
    const double pos = double((est_a.pose.x - est_b.pose.x).norm());
    const double ang =
        std::abs(double(angle_difference(est_a.pose.theta, est_b.pose.theta)));
    const double sig = double(
        (b.sigma - m * a.sigma * m.transpose()).template lpNorm<Eigen::Infinity>());
    report.pos_divergence.push_back(pos);
    report.ang_divergence.push_back(ang);
    report.sigma_divergence.push_back(sig);
    report.max_pos = std::max(report.max_pos, pos);
    report.max_ang = std::max(report.max_ang, ang);
    report.max_sigma = std::max(report.max_sigma, sig);
  };

  record_row(0);
  for (int k = 0; k < steps; ++k) {
    const VecX<Scalar>& y = measurements[static_cast<size_t>(k)];
    a = filter_step(system, a, u, y, Scalar(config.dt));
    b = filter_step(system, b, u, y, Scalar(config.dt));
    record_row(k + 1);
  }
  return report;
}

}  // namespace eqf
