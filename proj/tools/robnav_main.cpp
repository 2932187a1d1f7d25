// Command-line front end: simulate flights, learn the mismatch tolerance,
// run full GPS-denial experiments, and re-score exported trajectories.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robnav/config_io.hpp"
#include "robnav/errors.hpp"
#include "robnav/experiment.hpp"
#include "robnav/nav_model.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<int> grid_size;
  std::optional<double> train_denial;
  std::optional<double> val_denial;
  std::optional<std::string> val_type;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON configuration file");
  cmd->add_option("--seed", flags.seed, "overrides the config seed list with one seed");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--grid-min", flags.grid_min, "smallest candidate tolerance");
  cmd->add_option("--grid-max", flags.grid_max, "largest candidate tolerance");
  cmd->add_option("--grid-size", flags.grid_size, "number of candidate tolerances");
  cmd->add_option("--train-denial", flags.train_denial,
                  "training denial duration in seconds (0 disables)");
  cmd->add_option("--val-denial", flags.val_denial,
                  "validation denial duration in seconds (0 disables)");
  cmd->add_option("--val-type", flags.val_type, "validation scenario: straight or turn");
}

robnav::ExperimentConfig make_config(const CommonFlags& flags) {
  robnav::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = robnav::load_experiment_config(flags.config_path);
  }
  if (flags.seed) {
    cfg.seeds = {*flags.seed};
  }
  if (flags.out) {
    cfg.output_dir = *flags.out;
  }
  if (flags.grid_min || flags.grid_max || flags.grid_size) {
    const double lo = flags.grid_min.value_or(cfg.grid.values.front());
    const double hi = flags.grid_max.value_or(cfg.grid.values.back());
    const int n = flags.grid_size.value_or(static_cast<int>(cfg.grid.values.size()));
    cfg.grid = robnav::ToleranceGrid::linear(lo, hi, n);
  }
  if (flags.train_denial) {
    cfg.training.denial.duration = *flags.train_denial;
  }
  if (flags.val_denial) {
    cfg.validation.denial.duration = *flags.val_denial;
  }
  if (flags.val_type) {
    if (*flags.val_type == "straight") {
      cfg.validation.type = robnav::ValidationType::Straight;
    } else if (*flags.val_type == "turn") {
      cfg.validation.type = robnav::ValidationType::Turn;
    } else {
      throw robnav::ConfigError("--val-type must be 'straight' or 'turn'");
    }
  }
  cfg.validate();
  return cfg;
}

int cmd_simulate(const CommonFlags& flags) {
  const robnav::ExperimentConfig cfg = make_config(flags);
  if (cfg.flight.kind != robnav::FlightSource::Kind::Simulate) {
    throw robnav::ConfigError("simulate: config selects a loaded flight");
  }
  for (const std::uint64_t seed : cfg.seeds) {
    const robnav::FlightLog log =
        robnav::simulate_flight(cfg.flight.plan, cfg.noise, cfg.flight.sensors, seed);
    const std::filesystem::path dir = cfg.seeds.size() == 1
                                          ? cfg.output_dir
                                          : cfg.output_dir / ("seed_" + std::to_string(seed));
    robnav::save_log(log, dir);
    std::cout << "seed " << seed << ": wrote " << log.imu.size() << " IMU samples, "
              << log.fixes.size() << " fixes to " << dir.string() << "\n";
  }
  return 0;
}

int cmd_learn(const CommonFlags& flags) {
  const robnav::ExperimentConfig cfg = make_config(flags);

  for (const std::uint64_t seed : cfg.seeds) {
    const robnav::FlightLog log =
        cfg.flight.kind == robnav::FlightSource::Kind::Simulate
            ? robnav::simulate_flight(cfg.flight.plan, cfg.noise, cfg.flight.sensors, seed)
            : robnav::load_log(cfg.flight.log_dir);
    const std::vector<robnav::FixSample> fixes =
        robnav::inject_denial(log.fixes, cfg.training.denial);

    std::vector<double> imu_times;
    for (const robnav::ImuSample& s : log.imu) {
      imu_times.push_back(s.t);
    }
    const auto synced =
        robnav::make_synced_stream(log.imu, robnav::zoh_align(fixes, imu_times));
    const auto n_train =
        static_cast<std::size_t>(std::llround(cfg.training.length_s / cfg.noise.delta));

    robnav::Vector16d x0 = cfg.init_state;
    if (cfg.init_from_flight) {
      x0.segment<4>(robnav::StateIndex::kQuat) = log.truth.front().q;
      x0.segment<3>(robnav::StateIndex::kPos) = log.fixes.front().pos;
    }
    const robnav::NavSystemModel model(cfg.noise);
    const robnav::GaussianBelief init{
        x0, cfg.init_cov_scale * Eigen::MatrixXd::Identity(16, 16)};

    const robnav::LearnReport report =
        robnav::learn_tolerance(std::span(synced).first(n_train + 1), cfg.grid, init, model,
                                cfg.filter, cfg.training.a_priori_c);

    const std::filesystem::path dir = cfg.seeds.size() == 1
                                          ? cfg.output_dir
                                          : cfg.output_dir / ("seed_" + std::to_string(seed));
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "learn.csv");
    out << "c,mean_loss,survived\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
      out << report.grid[i] << ',' << report.losses[i] << ',' << (report.survived[i] ? 1 : 0)
          << '\n';
    }
    std::cout << "seed " << seed << ": c_hat = " << report.c_hat << " over " << report.n
              << " training steps (losses in " << (dir / "learn.csv").string() << ")\n";
  }
  return 0;
}

int cmd_run(const CommonFlags& flags) {
  const robnav::ExperimentConfig cfg = make_config(flags);
  for (const std::uint64_t seed : cfg.seeds) {
    const bool multi = cfg.seeds.size() > 1;
    const std::filesystem::path dir =
        multi ? cfg.output_dir / ("seed_" + std::to_string(seed)) : cfg.output_dir;
    const robnav::ExperimentRun run = robnav::run_experiment(cfg, seed, dir);
    if (multi) {
      robnav::append_report_csv(run.report, cfg.output_dir);
    }
    std::cout << "seed " << seed << ": c_hat = " << run.report.c_hat
              << "  EKF rmse = " << run.report.ekf.total
              << "  REKF rmse = " << run.report.rekf.total << "  (K = " << run.report.K
              << ", T = " << run.report.T << ", " << run.report.runtime_s << " s)\n";
  }
  return 0;
}

int cmd_eval(const std::string& dir) {
  const robnav::RecomputedMetrics m = robnav::evaluate_exported(dir);
  std::cout << "K = " << m.K << ", T = " << m.T << "\n";
  std::cout << "EKF  rmse: total = " << m.ekf.total << " (N " << m.ekf.north << ", E "
            << m.ekf.east << ", D " << m.ekf.down << ")\n";
  std::cout << "REKF rmse: total = " << m.rekf.total << " (N " << m.rekf.north << ", E "
            << m.rekf.east << ", D " << m.rekf.down << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust UAV position estimation experiments"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string eval_dir;

  CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic flight log");
  add_common_flags(simulate, flags);
  CLI::App* learn = app.add_subcommand("learn", "learn the tolerance from a training run");
  add_common_flags(learn, flags);
  CLI::App* run = app.add_subcommand("run", "full train/validate experiment with report");
  add_common_flags(run, flags);
  CLI::App* eval = app.add_subcommand("eval", "recompute metrics from exported trajectories");
  eval->add_option("dir", eval_dir, "directory containing traj_*.csv and denial.csv")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(flags);
    }
    if (learn->parsed()) {
      return cmd_learn(flags);
    }
    if (run->parsed()) {
      return cmd_run(flags);
    }
    return cmd_eval(eval_dir);
  } catch (const robnav::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
