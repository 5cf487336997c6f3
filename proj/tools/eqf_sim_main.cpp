#include "eqf/certify.hpp"
#include "eqf/sim/config_io.hpp"
#include "eqf/sim/csv.hpp"
#include "eqf/sim/plot.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CommonOverrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> precision;
  std::optional<double> duration;
  std::optional<double> dt;
  std::optional<double> noise_std;
};

void add_common_flags(CLI::App& cmd, CommonOverrides& o, std::string& out_dir) {
  cmd.add_option("--config", o.config_path, "Scenario JSON file (defaults to the stock scenario)");
  cmd.add_option("--out", out_dir, "Output directory")->capture_default_str();
  cmd.add_option("--seed", o.seed, "Landmark seed override");
  cmd.add_option("--precision", o.precision, "single or double")
      ->check(CLI::IsMember({"single", "double"}));
  cmd.add_option("--duration", o.duration, "Run length in seconds");
  cmd.add_option("--dt", o.dt, "Integration step in seconds");
  cmd.add_option("--noise-std", o.noise_std, "Measurement noise standard deviation in meters");
}

eqf::sim::ScenarioConfig effective_config(const CommonOverrides& o) {
  eqf::sim::ScenarioConfig config = o.config_path
                                        ? eqf::sim::load_scenario_file(*o.config_path)
                                        : eqf::sim::default_scenario();
  if (o.seed) config.landmark_seed = *o.seed;
  if (o.precision) {
    config.precision = *o.precision == "single" ? eqf::sim::Precision::Single
                                                : eqf::sim::Precision::Double;
  }
  if (o.duration) config.duration = *o.duration;
  if (o.dt) config.dt = *o.dt;
  if (o.noise_std) config.noise_std = *o.noise_std;
  eqf::sim::validate_scenario(config);
  return config;
}

int command_run(const CommonOverrides& overrides, const std::string& out_dir) {
  const eqf::sim::ScenarioConfig config = effective_config(overrides);
  const eqf::sim::RunRecord record = eqf::sim::run_scenario(config);

  fs::create_directories(out_dir);
  const fs::path base(out_dir);
  eqf::sim::save_scenario_file((base / "effective_config.json").string(), config);
  eqf::sim::write_csv_file((base / "run.csv").string(), record);
  eqf::sim::write_run_plot_script((base / "plot_run.py").string(), "run.csv");

  std::cout << "wrote " << (base / "run.csv").string() << " (" << record.rows() << " rows, "
            << record.tracks.size() << " filters)\n";
  for (size_t i = 0; i < record.tracks.size(); ++i) {
    const eqf::sim::RunRecord::Track& track = record.tracks[i];
    std::cout << "filter " << (i + 1) << ": final position error " << track.pos_err.back()
              << " m, final angle error " << track.ang_err.back() << " rad\n";
  }
  return 0;
}

int command_verify(std::uint64_t seed) {
  const eqf::CertificationReport report = eqf::run_certification(seed);
  eqf::print_residual_table(std::cout, report);
  if (!report.all_passed()) {
    std::cout << "verification FAILED\n";
    return 1;
  }
  std::cout << "all identities verified\n";
  return 0;
}

int command_sweep(const CommonOverrides& overrides, const std::string& out_dir) {
  eqf::sim::ScenarioConfig config = effective_config(overrides);
  config.precision = eqf::sim::Precision::Single;
  const eqf::sim::PrecisionStudy study = eqf::sim::run_precision_study(config);

  fs::create_directories(out_dir);
  const fs::path base(out_dir);
  {
    std::ofstream out((base / "precision_study.csv").string(), std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << (base / "precision_study.csv").string() << "\n";
      return 1;
    }
    eqf::sim::write_precision_study_csv(out, study);
  }
  eqf::sim::write_precision_plot_script((base / "plot_precision.py").string(),
                                        "precision_study.csv");

  std::cout << "single-precision deviation from the double reference, by chart origin:\n";
  for (const eqf::sim::OriginStudyRow& row : study.rows) {
    std::cout << "  origin (" << row.origin.theta << ", " << row.origin.x.x() << ", "
              << row.origin.x.y() << "): mean " << row.mean_pos_deviation << " m, max "
              << row.max_pos_deviation << " m\n";
  }
  std::cout << "wrote " << (base / "precision_study.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant filter playground: planar localisation from known landmarks"};
  app.require_subcommand(1);

  CommonOverrides run_overrides;
  std::string run_out = ".";
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate a scenario and write CSV + plot script");
  add_common_flags(*run_cmd, run_overrides, run_out);

  std::uint64_t verify_seed = 20240817;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the identity suites and print the residual table");
  verify_cmd->add_option("--seed", verify_seed, "Sampling seed")->capture_default_str();

  CommonOverrides sweep_overrides;
  std::string sweep_out = ".";
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep-precision", "Chart-origin magnitude study in single precision");
  add_common_flags(*sweep_cmd, sweep_overrides, sweep_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return command_run(run_overrides, run_out);
    if (verify_cmd->parsed()) return command_verify(verify_seed);
    if (sweep_cmd->parsed()) return command_sweep(sweep_overrides, sweep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
