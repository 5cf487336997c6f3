#pragma once

#include "eqf/sim/run.hpp"

namespace eqf::sim {

/// One row of the chart-origin precision study: how far a single-precision
/// filter anchored at the given origin strays from the double-precision
/// reference anchored at the identity.
struct OriginStudyRow {
  GroupElement<double> origin;
  double mean_pos_deviation{0};
  double max_pos_deviation{0};
  double mean_ang_deviation{0};
  double max_ang_deviation{0};
};

/// Base gains of the study filter before transport. The heading entries
/// default to the small study values; see the constants in scenario.hpp for
/// why they cannot match the run defaults at 32-bit precision.
struct PrecisionStudyOptions {
  double heading_q{kStudyHeadingQ};
  double position_q{kDefaultQScale};
  double heading_sigma0{kStudyHeadingSigma0};
  double position_sigma0{kDefaultSigma0Scale};
  double r_scale{kDefaultRScale};
};

struct PrecisionStudy {
  std::vector<double> t;
  // deviation[i][k] is the position gap of filter i at time step k.
  std::vector<std::vector<double>> deviation;
  std::vector<OriginStudyRow> rows;
  PrecisionStudyOptions options;
};

/// Runs the scenario's filter bank in single precision next to one
/// double-precision filter anchored at the identity and reports per-origin
/// deviation statistics.
///
/// Every filter is a transport of one base filter anchored at the true
/// initial pose, so in exact arithmetic all of them would produce the same
/// estimate trajectory and the measured deviation isolates the finite
/// precision cost of the origin placement. Anchoring at the truth, rather
/// than at a perturbed estimate, keeps the transient residual at the
/// rounding floor; a large residual would be amplified by the cancellation
/// noise of the distance-squared covariance entries and buries the signal.
/// Each lane runs its whole pipeline (truth, measurements, transport,
/// filter) in its own precision.
[[nodiscard]] inline PrecisionStudy run_precision_study(const ScenarioConfig& config,
                                                        const PrecisionStudyOptions& options = {}) {
  validate_scenario(config);
  const int steps = step_count(config);

  const LandmarkSet<double> landmarks_d =
      draw_landmarks(config.landmark_count, config.landmark_seed);
  const LandmarkSet<float> landmarks_f = landmarks_d.cast<float>();
  const Se2LocalisationSystem<double> system_d(landmarks_d);
  const Se2LocalisationSystem<float> system_f(landmarks_f);

  const std::uint64_t noise_seed = noise_stream_seed(config.landmark_seed);
  const auto truth_d = integrate_truth<double>(SystemState<double>(config.initial_pose),
                                               config.velocity, config.dt, steps);
  const auto measurements_d =
      synthesize_measurements<double>(truth_d, landmarks_d, config.noise_std, noise_seed);
  const auto truth_f =
      integrate_truth<float>(SystemState<float>(config.initial_pose.cast<float>()),
                             config.velocity.cast<float>(), float(config.dt), steps);
  const auto measurements_f = synthesize_measurements<float>(
      truth_f, landmarks_f, float(config.noise_std), noise_seed);

  Mat3<double> q0 = Mat3<double>::Identity() * options.position_q;
  q0(0, 0) = options.heading_q;
  Mat3<double> sigma0 = Mat3<double>::Identity() * options.position_sigma0;
  sigma0(0, 0) = options.heading_sigma0;
  const MatX<double> r0 =
      MatX<double>::Identity(2 * config.landmark_count, 2 * config.landmark_count) *
      options.r_scale;

  const ChartKind base_kind = config.filters.front().chart_kind;
  const FilterState<double> base_d{
      GroupElement<double>::Identity(),
      sigma0,
      system_d.make_chart(base_kind, SystemState<double>(config.initial_pose)),
      GainConfig<double>(q0, r0),
      0.0,
  };
  const FilterState<float> base_f{
      GroupElement<float>::Identity(),
      sigma0.cast<float>(),
      system_f.make_chart(base_kind, SystemState<float>(config.initial_pose.cast<float>())),
      GainConfig<float>(q0.cast<float>(), r0.cast<float>()),
      0.0f,
  };

  FilterState<double> reference = transport_filter(
      base_d, system_d.make_chart(base_kind,
                                  SystemState<double>(GroupElement<double>::Identity())));
  std::vector<FilterState<float>> bank;
  bank.reserve(config.filters.size());
  for (const FilterSetup& fs : config.filters) {
    bank.push_back(transport_filter(
        base_f,
        system_f.make_chart(fs.chart_kind, SystemState<float>(fs.origin.cast<float>()))));
  }

  PrecisionStudy study;
  study.options = options;
  study.deviation.resize(bank.size());
  study.rows.resize(bank.size());
  for (size_t i = 0; i < bank.size(); ++i) study.rows[i].origin = config.filters[i].origin;

  const auto record_row = [&](int k) {
    study.t.push_back(double(k) * config.dt);
    const SystemState<double> ref = state_estimate(reference);
    for (size_t i = 0; i < bank.size(); ++i) {
      const SystemState<double> est = state_estimate(bank[i]).cast<double>();
      const double pos = (est.pose.x - ref.pose.x).norm();
      const double ang = std::abs(angle_difference(est.pose.theta, ref.pose.theta));
      study.deviation[i].push_back(pos);
      OriginStudyRow& row = study.rows[i];
      row.mean_pos_deviation += pos;
      row.max_pos_deviation = std::max(row.max_pos_deviation, pos);
      row.mean_ang_deviation += ang;
      row.max_ang_deviation = std::max(row.max_ang_deviation, ang);
    }
  };

  const AlgebraVector<double> u_d = config.velocity;
  const AlgebraVector<float> u_f = config.velocity.cast<float>();

  record_row(0);
  for (int k = 0; k < steps; ++k) {
    reference = filter_step(system_d, reference, u_d, measurements_d[static_cast<size_t>(k)],
                            config.dt);
    for (auto& fs : bank)
      fs = filter_step(system_f, fs, u_f, measurements_f[static_cast<size_t>(k)],
                       float(config.dt));
    record_row(k + 1);
  }

  const double n = double(steps + 1);
  for (OriginStudyRow& row : study.rows) {
    row.mean_pos_deviation /= n;
    row.mean_ang_deviation /= n;
  }
  return study;
}

}  // namespace eqf::sim
