#include "eqf/certify.hpp"

#include "eqf/symmetry.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>

namespace eqf {

namespace {

/// Uniform draws with an explicitly pinned transform, same policy as the
/// normal sampler: mt19937_64 is fully specified, the distribution classes
/// are not.
class UniformSampler {
public:
  explicit UniformSampler(std::uint64_t seed) : gen_(seed) {}

  double range(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  GroupElementd pose(double angle_span = 3.0, double translation_span = 2.0) {
    const double theta = range(-angle_span, angle_span);
    const double x = range(-translation_span, translation_span);
    const double y = range(-translation_span, translation_span);
    return GroupElementd(theta, x, y);
  }

  AlgebraVectord velocity(double span = 1.0) {
    return AlgebraVectord(range(-span, span), range(-span, span), range(-span, span));
  }

  LandmarkSet<double> landmarks(int count, double span = 3.0) {
    std::vector<Vec2<double>> pts;
    pts.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
      pts.emplace_back(range(-span, span), range(-span, span));
    }
    return LandmarkSet<double>(std::move(pts));
  }

private:
  std::mt19937_64 gen_;
};

/// Runs one residual function over n samples and records the worst case.
template <typename Fn>
ResidualRow certified(const std::string& suite, const std::string& name, int samples,
                      double tolerance, Fn&& residual) {
  ResidualRow row{suite, name, samples, 0.0, tolerance, false};
  for (int i = 0; i < samples; ++i) {
    row.max_residual = std::max(row.max_residual, residual());
  }
  row.pass = row.max_residual <= tolerance;
  return row;
}

Mat3<double> random_psd(UniformSampler& rng) {
  Mat3<double> a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = rng.range(-1.0, 1.0);
  }
  return a * a.transpose() + 0.1 * Mat3<double>::Identity();
}

}  // namespace

bool CertificationReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const ResidualRow& r) { return r.pass; });
}

const ResidualRow& CertificationReport::row(const std::string& name) const {
  for (const ResidualRow& r : rows) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("certification: no row named " + name);
}

CertificationReport run_certification(std::uint64_t seed) {
  UniformSampler rng(seed);
  CertificationReport report;
  constexpr double kAlgebraTol = 1e-12;
  constexpr int kAlgebraSamples = 1000;
  constexpr int kFieldSamples = 100;

  report.rows.push_back(certified("algebra", "group associativity", kAlgebraSamples, kAlgebraTol,
                                  [&] {
                                    const auto a = rng.pose();
                                    const auto b = rng.pose();
                                    const auto c = rng.pose();
                                    return group_distance(compose(compose(a, b), c),
                                                          compose(a, compose(b, c)));
                                  }));

  report.rows.push_back(certified("algebra", "identity and inverse", kAlgebraSamples, kAlgebraTol,
                                  [&] {
                                    const auto a = rng.pose();
                                    const auto id = GroupElementd::Identity();
                                    double worst = group_distance(compose(a, inverse(a)), id);
                                    worst = std::max(worst,
                                                     group_distance(compose(inverse(a), a), id));
                                    worst = std::max(worst, group_distance(compose(a, id), a));
                                    return worst;
                                  }));

  report.rows.push_back(certified("algebra", "exp/log roundtrip", kAlgebraSamples, kAlgebraTol,
                                  [&] {
                                    const auto u = rng.velocity(3.0);
                                    const double back = (log(exp(u)) - u).sup_norm();
                                    const auto g = rng.pose(3.0, 2.0);
                                    const double fwd = group_distance(exp(log(g)), g);
                                    return std::max(back, fwd);
                                  }));

  report.rows.push_back(certified("algebra", "adjoint homomorphism", kAlgebraSamples, kAlgebraTol,
                                  [&] {
                                    const auto a = rng.pose();
                                    const auto b = rng.pose();
                                    return ((adjoint_matrix(compose(a, b)) -
                                             adjoint_matrix(a) * adjoint_matrix(b))
                                                .lpNorm<Eigen::Infinity>());
                                  }));

  report.rows.push_back(certified("algebra", "adjoint matrix action", kAlgebraSamples, kAlgebraTol,
                                  [&] {
                                    const auto g = rng.pose();
                                    const auto u = rng.velocity();
                                    const Mat3<double> conj = g.matrix() * wedge(u) *
                                                              g.matrix().inverse();
                                    return (adjoint_matrix(g) * u.coords() - vee(conj).coords())
                                        .lpNorm<Eigen::Infinity>();
                                  }));

  report.rows.push_back(certified("algebra", "state action axioms", kAlgebraSamples, kAlgebraTol,
                                  [&] {
                                    const auto x = rng.pose();
                                    const auto y = rng.pose();
                                    const SystemState<double> xi(rng.pose());
                                    double worst =
                                        state_distance(phi(GroupElementd::Identity(), xi), xi);
                                    worst = std::max(
                                        worst, state_distance(phi(y, phi(x, xi)),
                                                              phi(compose(x, y), xi)));
                                    return worst;
                                  }));

  report.rows.push_back(certified("algebra", "input action axioms", kAlgebraSamples, kAlgebraTol,
                                  [&] {
                                    const auto x = rng.pose();
                                    const auto y = rng.pose();
                                    const auto u = rng.velocity();
                                    double worst =
                                        (psi(GroupElementd::Identity(), u) - u).sup_norm();
                                    worst = std::max(worst, (psi(y, psi(x, u)) -
                                                             psi(compose(x, y), u))
                                                                .sup_norm());
                                    return worst;
                                  }));

  report.rows.push_back(certified(
      "equivariance", "dynamics equivariance (differenced)", kFieldSamples, 1e-6, [&] {
        const Se2LocalisationSystem<double> system(rng.landmarks(4));
        return check_system_equivariance(system, rng.pose(), SystemState<double>(rng.pose()),
                                         rng.velocity());
      }));

  report.rows.push_back(certified("equivariance", "lift reproduces dynamics", kFieldSamples,
                                  kAlgebraTol, [&] {
                                    const Se2LocalisationSystem<double> system(rng.landmarks(4));
                                    const SystemState<double> xi(rng.pose());
                                    const auto u = rng.velocity();
                                    return (system.lift(xi, u) - system.dynamics(xi, u).body)
                                        .sup_norm();
                                  }));

  report.rows.push_back(certified("equivariance", "lift equivariance", kFieldSamples, kAlgebraTol,
                                  [&] {
                                    const Se2LocalisationSystem<double> system(rng.landmarks(4));
                                    return check_lift_equivariance(
                                        system, rng.pose(), SystemState<double>(rng.pose()),
                                        rng.velocity());
                                  }));

  report.rows.push_back(certified("invariance", "error field input invariance", kFieldSamples,
                                  kAlgebraTol, [&] {
                                    const Se2LocalisationSystem<double> system(rng.landmarks(4));
                                    const ErrorParameters<double> params{
                                        rng.velocity(), rng.pose(), rng.velocity(0.5),
                                        SystemState<double>(rng.pose())};
                                    return check_error_input_invariance(
                                        system, SystemState<double>(rng.pose()), params,
                                        rng.pose());
                                  }));

  report.rows.push_back(certified("invariance", "error field equivariance", kFieldSamples, 1e-8,
                                  [&] {
                                    const Se2LocalisationSystem<double> system(rng.landmarks(4));
                                    const ErrorParameters<double> params{
                                        rng.velocity(), rng.pose(), rng.velocity(0.5),
                                        SystemState<double>(rng.pose())};
                                    return check_error_field_equivariance(
                                        system, SystemState<double>(rng.pose()), params,
                                        rng.pose());
                                  }));

  report.rows.push_back(certified("invariance", "pushforward matches adjoint", kFieldSamples,
                                  1e-8, [&] {
                                    const auto z = rng.pose();
                                    const auto c = rng.velocity();
                                    const auto field = [&](const SystemState<double>& xi) {
                                      return TangentVector<double>{xi, c};
                                    };
                                    const auto pushed = pushforward_field<double>(
                                        z, field, SystemState<double>(rng.pose()));
                                    const Vec3<double> expected =
                                        adjoint_matrix(inverse(z)) * c.coords();
                                    return (pushed.body.coords() - expected)
                                        .lpNorm<Eigen::Infinity>();
                                  }));

  const auto random_filter_state = [&](const Se2LocalisationSystem<double>& system,
                                       ChartKind kind) {
    const Chart<double> chart = system.make_chart(kind, SystemState<double>(rng.pose()));
    const Eigen::Index out_dim = system.output_dim();
    return FilterState<double>{
        rng.pose(), random_psd(rng), chart,
        GainConfig<double>(random_psd(rng),
                           MatX<double>(0.1 * MatX<double>::Identity(out_dim, out_dim))),
        0.0};
  };
  const auto chart_kind_for = [](int i) {
    return i % 2 == 0 ? ChartKind::Component : ChartKind::Exponential;
  };

  {
    int trial = 0;
    report.rows.push_back(certified(
        "linearisation", "state matrix vanishes", kFieldSamples, 0.0, [&] {
          const Se2LocalisationSystem<double> system(rng.landmarks(4));
          const FilterState<double> state =
              random_filter_state(system, chart_kind_for(trial++));
          return state_matrix(system, state, rng.velocity()).lpNorm<Eigen::Infinity>();
        }));
  }

  {
    int trial = 0;
    report.rows.push_back(certified(
        "linearisation", "output matrix matches differencing", 50, 1e-8, [&] {
          const Se2LocalisationSystem<double> system(rng.landmarks(4));
          const FilterState<double> state =
              random_filter_state(system, chart_kind_for(trial++));
          const std::function<VecX<double>(const VecX<double>&)> through_chart =
              [&](const VecX<double>& coords) {
                return system.output(phi(state.x_hat, state.chart.inverse(Vec3<double>(coords))));
              };
          const MatX<double> oracle =
              numerical_differential<double>(through_chart, VecX<double>::Zero(3));
          return (output_matrix(system, state) - oracle).lpNorm<Eigen::Infinity>();
        }));
  }

  {
    int trial = 0;
    report.rows.push_back(certified(
        "linearisation", "output matrix transport consistency", 50, 1e-8, [&] {
          const Se2LocalisationSystem<double> system(rng.landmarks(4));
          const FilterState<double> state =
              random_filter_state(system, chart_kind_for(trial));
          const GroupElementd z = rng.pose();
          const Chart<double> target = system.make_chart(
              chart_kind_for(trial + 1), phi(inverse(z), state.chart.origin()));
          ++trial;
          const FilterState<double> moved = transport_filter(state, target);
          const Mat3<double> m_inv = transition_matrix(target, state.chart, inverse(z));
          const MatX<double> lhs = output_matrix(system, moved);
          const MatX<double> rhs = output_matrix(system, state) * m_inv;
          return (lhs - rhs).lpNorm<Eigen::Infinity>();
        }));
  }

  return report;
}

void print_residual_table(std::ostream& out, const CertificationReport& report) {
  out << std::left << std::setw(15) << "suite" << std::setw(42) << "identity" << std::right
      << std::setw(8) << "samples" << std::setw(14) << "max residual" << std::setw(12)
      << "tolerance" << "  result\n";
  out << std::string(97, '-') << '\n';
  for (const ResidualRow& row : report.rows) {
    out << std::left << std::setw(15) << row.suite << std::setw(42) << row.name << std::right
        << std::setw(8) << row.samples << std::setw(14) << std::scientific
        << std::setprecision(3) << row.max_residual << std::setw(12) << std::setprecision(1)
        << row.tolerance << (row.pass ? "  pass" : "  FAIL") << '\n';
  }
  out << std::defaultfloat << std::setprecision(6);
}

}  // namespace eqf
