#pragma once

#include "eqf/sim/scenario.hpp"
#include "eqf/symmetry.hpp"

#include <cstring>
#include <sstream>
#include <vector>

namespace eqf::sim {

/// Constant-velocity truth: multiplicative Euler P <- P * exp(dt U), which is
/// exact for a constant input. Returns steps + 1 states including the start.
template <typename Scalar>
[[nodiscard]] std::vector<SystemState<Scalar>> integrate_truth(
    const SystemState<Scalar>& initial, const AlgebraVector<Scalar>& velocity, Scalar dt,
    int steps) {
  std::vector<SystemState<Scalar>> truth;
  truth.reserve(static_cast<size_t>(steps) + 1);
  truth.push_back(initial);
  const GroupElement<Scalar> step = exp(dt * velocity);
  for (int k = 0; k < steps; ++k) {
    truth.emplace_back(compose(truth.back().pose, step));
  }
  return truth;
}

/// Landmark measurements along a truth trajectory, optionally with additive
/// Gaussian noise per output coordinate. Noise draw order is fixed: per step,
/// per landmark, x before y.
template <typename Scalar>
[[nodiscard]] std::vector<VecX<Scalar>> synthesize_measurements(
    const std::vector<SystemState<Scalar>>& truth, const LandmarkSet<Scalar>& landmarks,
    Scalar noise_std, std::uint64_t seed) {
  NormalSampler sampler(seed);
  std::vector<VecX<Scalar>> measurements;
  measurements.reserve(truth.size());
  for (const SystemState<Scalar>& xi : truth) {
    VecX<Scalar> y = landmark_output(xi, landmarks);
    if (noise_std > Scalar(0)) {
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        y(i) += noise_std * Scalar(sampler.next());
      }
    }
    measurements.push_back(std::move(y));
  }
  return measurements;
}

/// Full result of one simulation run, recorded in double regardless of the
/// precision the pipeline executed in.
struct RunRecord {
  struct Track {
    std::vector<Vec3<double>> estimate;  // theta, x, y
    std::vector<double> pos_err;
    std::vector<double> ang_err;
    std::vector<Vec3<double>> sigma_diag;
  };

  std::vector<double> t;
  std::vector<Vec3<double>> truth;  // theta, x, y
  std::vector<Track> tracks;

  // Provenance carried into output headers.
  std::uint64_t landmark_seed{0};
  std::vector<Vec2<double>> landmarks;
  double dt{0};
  double noise_std{0};
  Precision precision{Precision::Double};
  std::vector<std::string> filter_notes;

  [[nodiscard]] size_t rows() const { return t.size(); }
};

namespace detail {

[[nodiscard]] inline std::uint64_t fnv1a(const void* data, size_t size,
                                         std::uint64_t hash = 0xcbf29ce484222325ull) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

template <typename Scalar>
[[nodiscard]] std::uint64_t measurement_checksum(const VecX<Scalar>& y, std::uint64_t hash) {
  return fnv1a(y.data(), static_cast<size_t>(y.size()) * sizeof(Scalar), hash);
}

template <typename Scalar>
[[nodiscard]] Vec3<double> pose_row(const GroupElement<Scalar>& g) {
  return Vec3<double>(double(g.theta), double(g.x.x()), double(g.x.y()));
}

/// Reference filter whose chart is anchored at its own initial estimate, so
/// its gain fields are read in well-scaled coordinates. Transports of this
/// state seed the matched banks.
template <typename Scalar>
[[nodiscard]] FilterState<Scalar> estimate_anchored_filter(
    const FilterSetup& setup, const EquivariantSystem<Scalar>& system) {
  const GroupElement<Scalar> estimate0 =
      compose(setup.origin.cast<Scalar>(), setup.x_hat0.cast<Scalar>());
  const Chart<Scalar> chart =
      system.make_chart(setup.chart_kind, SystemState<Scalar>(estimate0));
  return FilterState<Scalar>{
      GroupElement<Scalar>::Identity(),
      setup.sigma0.cast<Scalar>(),
      chart,
      GainConfig<Scalar>(setup.q.cast<Scalar>(), setup.r.cast<Scalar>()),
      Scalar(0),
  };
}

/// Initial filter bank per the scenario. With consistent_gains the first
/// setup defines a reference filter anchored at the shared initial estimate
/// (its sigma0 and q are read in those coordinates) and every bank member is
/// its transport to the configured chart, so the whole bank is
/// mathematically one filter. Without the flag every setup stands alone with
/// its fields read literally in its own chart coordinates.
template <typename Scalar>
[[nodiscard]] std::vector<FilterState<Scalar>> initial_filter_bank(
    const ScenarioConfig& config, const EquivariantSystem<Scalar>& system) {
  std::vector<FilterState<Scalar>> bank;
  bank.reserve(config.filters.size());
  if (config.consistent_gains) {
    const FilterState<Scalar> base =
        estimate_anchored_filter(config.filters.front(), system);
    for (const FilterSetup& setup : config.filters) {
      const Chart<Scalar> chart = system.make_chart(
          setup.chart_kind, SystemState<Scalar>(setup.origin.cast<Scalar>()));
      bank.push_back(transport_filter(base, chart));
    }
    return bank;
  }
  for (const FilterSetup& setup : config.filters) {
    const Chart<Scalar> chart = system.make_chart(
        setup.chart_kind, SystemState<Scalar>(setup.origin.cast<Scalar>()));
    bank.push_back(FilterState<Scalar>{
        setup.x_hat0.cast<Scalar>(),
        setup.sigma0.cast<Scalar>(),
        chart,
        GainConfig<Scalar>(setup.q.cast<Scalar>(), setup.r.cast<Scalar>()),
        Scalar(0),
    });
  }
  return bank;
}

}  // namespace detail

/// Runs the configured filter bank over the synthetic trajectory in the
/// scalar type selected by the caller. Every filter consumes the identical
/// measurement stream; a per-filter checksum guards against accidental
/// divergence of the inputs. A non-finite filter state aborts the run with
/// the offending filter and step in the error text.
template <typename Scalar>
[[nodiscard]] RunRecord run(const ScenarioConfig& config) {
  validate_scenario(config);
  const int steps = step_count(config);

  const LandmarkSet<double> landmarks_d = draw_landmarks(config.landmark_count,
                                                         config.landmark_seed);
  const LandmarkSet<Scalar> landmarks = landmarks_d.cast<Scalar>();
  const Se2LocalisationSystem<Scalar> system(landmarks);

  const auto truth = integrate_truth<Scalar>(
      SystemState<Scalar>(config.initial_pose.cast<Scalar>()),
      config.velocity.cast<Scalar>(), Scalar(config.dt), steps);
  const auto measurements = synthesize_measurements<Scalar>(
      truth, landmarks, Scalar(config.noise_std), noise_stream_seed(config.landmark_seed));

  std::vector<FilterState<Scalar>> bank = detail::initial_filter_bank(config, system);
  const AlgebraVector<Scalar> u = config.velocity.cast<Scalar>();

  RunRecord record;
  record.landmark_seed = config.landmark_seed;
  record.landmarks = landmarks_d.points();
  record.dt = config.dt;
  record.noise_std = config.noise_std;
  record.precision = config.precision;
  record.tracks.resize(bank.size());
  for (size_t i = 0; i < bank.size(); ++i) {
    std::ostringstream note;
    note << "chart=" << chart_kind_name(bank[i].chart.kind())
         << " origin=(" << double(bank[i].chart.origin().pose.theta) << ","
         << double(bank[i].chart.origin().pose.x.x()) << ","
         << double(bank[i].chart.origin().pose.x.y()) << ")";
    record.filter_notes.push_back(note.str());
  }

  std::vector<std::uint64_t> stream_checksums(bank.size(), 0xcbf29ce484222325ull);

  const auto record_row = [&](int k) {
    record.t.push_back(double(k) * config.dt);
    record.truth.push_back(detail::pose_row(truth[static_cast<size_t>(k)].pose));
    for (size_t i = 0; i < bank.size(); ++i) {
      const SystemState<Scalar> est = state_estimate(bank[i]);
      RunRecord::Track& track = record.tracks[i];
      track.estimate.push_back(detail::pose_row(est.pose));
      const Vec2<Scalar> dx = est.pose.x - truth[static_cast<size_t>(k)].pose.x;
      track.pos_err.push_back(double(dx.norm()));
      track.ang_err.push_back(std::abs(
          double(angle_difference(est.pose.theta, truth[static_cast<size_t>(k)].pose.theta))));
      track.sigma_diag.push_back(Vec3<double>(double(bank[i].sigma(0, 0)),
                                              double(bank[i].sigma(1, 1)),
                                              double(bank[i].sigma(2, 2))));
    }
  };

  record_row(0);
  for (int k = 0; k < steps; ++k) {
    const VecX<Scalar>& y = measurements[static_cast<size_t>(k)];
    for (size_t i = 0; i < bank.size(); ++i) {
      stream_checksums[i] = detail::measurement_checksum(y, stream_checksums[i]);
      try {
        bank[i] = filter_step(system, bank[i], u, y, Scalar(config.dt));
      } catch (const NonFiniteStateError& err) {
        std::ostringstream msg;
        msg << "run: filter " << (i + 1) << " diverged at step " << (k + 1) << ": "
            << err.what();
        throw NonFiniteStateError(msg.str());
      }
    }
    record_row(k + 1);
  }

  for (size_t i = 1; i < stream_checksums.size(); ++i) {
    if (stream_checksums[i] != stream_checksums[0]) {
      throw std::logic_error("run: filters consumed different measurement streams");
    }
  }
  return record;
}

/// Dispatch on the precision recorded in the config.
[[nodiscard]] inline RunRecord run_scenario(const ScenarioConfig& config) {
  return config.precision == Precision::Single ? run<float>(config) : run<double>(config);
}

}  // namespace eqf::sim
