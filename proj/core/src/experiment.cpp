#include "robnav/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "robnav/errors.hpp"
#include "robnav/nav_model.hpp"

namespace robnav {

namespace {

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_positions_csv(const std::filesystem::path& path, const std::vector<double>& times,
                         const std::vector<Eigen::Vector3d>& pos) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("export_trajectories: cannot write " + path.string());
  }
  out << "t,pn,pe,pd\n";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    out << format_full(times[i]) << ',' << format_full(pos[i](0)) << ','
        << format_full(pos[i](1)) << ',' << format_full(pos[i](2)) << '\n';
  }
}

std::vector<Eigen::Vector3d> read_positions_csv(const std::filesystem::path& path,
                                                std::vector<double>* times_out) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("evaluate_exported: cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != "t,pn,pe,pd") {
    throw std::runtime_error("evaluate_exported: bad header in " + path.string());
  }
  std::vector<Eigen::Vector3d> pos;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    double t, n, e, d;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &n, &e, &d) != 4) {
      throw std::runtime_error("evaluate_exported: " + path.string() + " line " +
                               std::to_string(line_no) + ": expected 4 fields");
    }
    pos.emplace_back(n, e, d);
    if (times_out != nullptr) {
      times_out->push_back(t);
    }
  }
  return pos;
}

/// Index of the first aligned sample at/after `start` whose source fix is genuine.
std::size_t reacquisition_index(const std::vector<AlignedMeasurement>& aligned, double start) {
  for (std::size_t k = 0; k < aligned.size(); ++k) {
    if (aligned[k].t >= start && !aligned[k].held) {
      return k;
    }
  }
  throw NumericalError("run_experiment: the signal is never reacquired after the denial");
}

}  // namespace

Vector16d ExperimentConfig::default_init_state() {
  Vector16d x;
  x << 1.0, 0.0, 0.0, 0.0,              // attitude
      0.0, 0.0, 0.0,                    // velocity
      0.9926, -0.0126, 0.0230,          // position from the first fix
      2.7556e-6, 2.7556e-6, 2.7556e-6,  // angular-increment bias
      6.76e-11, 6.76e-11, 6.76e-11;     // velocity-increment bias
  return x;
}

void ExperimentConfig::validate() const {
  noise.validate();
  grid.validate();
  if (!(init_cov_scale > 0.0)) {
    throw ConfigError("init_cov_scale must be positive");
  }
  if (seeds.empty()) {
    throw ConfigError("at least one seed is required");
  }
  if (!(training.length_s > 0.0)) {
    throw ConfigError("training length must be positive");
  }
  if (training.a_priori_c < 0.0) {
    throw ConfigError("a_priori_c must be non-negative");
  }

  const double duration =
      flight.kind == FlightSource::Kind::Simulate ? flight.plan.duration() : -1.0;
  if (duration >= 0.0 && training.length_s >= duration) {
    throw ConfigError("training length must leave room for a validation phase");
  }

  const DenialScenario& tr = training.denial;
  if (tr.duration > 0.0 && (tr.start < 0.0 || tr.end() > training.length_s)) {
    throw ConfigError("training denial window must lie inside the training phase");
  }
  const double val_start = validation.resolved_start();
  const DenialScenario& va = validation.denial;
  if (va.duration > 0.0 && val_start < training.length_s) {
    throw ConfigError("validation denial window must start after the training phase");
  }
  if (duration >= 0.0 && va.duration > 0.0 && val_start + va.duration > duration) {
    throw ConfigError("validation denial window must end before the flight does");
  }
}

ExperimentRun run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                             const std::optional<std::filesystem::path>& out_dir) {
  const auto t_begin = std::chrono::steady_clock::now();
  cfg.validate();

  ExperimentRun run;
  run.report.seed = seed;

  // 1. Obtain the flight.
  if (cfg.flight.kind == FlightSource::Kind::Simulate) {
    run.log = simulate_flight(cfg.flight.plan, cfg.noise, cfg.flight.sensors, seed);
  } else {
    run.log = load_log(cfg.flight.log_dir);
  }
  if (out_dir) {
    save_log(run.log, *out_dir / "logs");
  }

  // 2. Denial windows, then alignment onto the IMU clock.
  run.train_denial = cfg.training.denial;
  run.val_denial = cfg.validation.denial;
  run.val_denial.start = cfg.validation.resolved_start();
  run.val_denial.applies_to = DenialScenario::Phase::Validation;

  std::vector<FixSample> fixes = inject_denial(run.log.fixes, run.train_denial);
  fixes = inject_denial(fixes, run.val_denial);

  std::vector<double> imu_times;
  imu_times.reserve(run.log.imu.size());
  for (const ImuSample& s : run.log.imu) {
    imu_times.push_back(s.t);
  }
  run.aligned = zoh_align(fixes, imu_times);
  const std::vector<SyncedSample> synced = make_synced_stream(run.log.imu, run.aligned);

  const std::size_t n_train =
      static_cast<std::size_t>(std::llround(cfg.training.length_s / cfg.noise.delta));
  if (n_train + 1 >= synced.size()) {
    throw ConfigError("training phase does not fit the flight");
  }

  // 3. Initial belief.
  const NavSystemModel model(cfg.noise);
  Vector16d x0 = cfg.init_state;
  if (cfg.init_from_flight) {
    x0.segment<4>(StateIndex::kQuat) = run.log.truth.front().q;
    x0.segment<3>(StateIndex::kPos) = run.log.fixes.front().pos;
  }
  GaussianBelief init{x0, cfg.init_cov_scale *
                              Eigen::MatrixXd::Identity(StateIndex::kDim, StateIndex::kDim)};

  // 4. Training phase: the candidate bank learns c_hat while the a-priori
  // filter produces the training trajectory and the handoff belief.
  PhaseTrajectory train_traj;
  run.learn = learn_tolerance(std::span(synced).first(n_train + 1), cfg.grid, init, model,
                              cfg.filter, cfg.training.a_priori_c, &train_traj);
  run.report.c_hat = run.learn.c_hat;
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    std::ofstream out(*out_dir / "learn.csv");
    out << "c,mean_loss,survived\n";
    for (std::size_t i = 0; i < run.learn.grid.size(); ++i) {
      out << format_full(run.learn.grid[i]) << ',' << format_full(run.learn.losses[i]) << ','
          << (run.learn.survived[i] ? 1 : 0) << '\n';
    }
  }

  // 5. Validation phase, once per filter, both from the handed-off belief.
  const std::span<const SyncedSample> val_data = std::span(synced).subspan(n_train);
  FilterConfig ekf_cfg = cfg.filter;
  ekf_cfg.tolerance = 0.0;
  FilterConfig rekf_cfg = cfg.filter;
  rekf_cfg.tolerance = run.learn.c_hat;
  const PhaseTrajectory ekf_traj = run_phase(val_data, model, ekf_cfg, train_traj.final_belief);
  const PhaseTrajectory rekf_traj =
      run_phase(val_data, model, rekf_cfg, train_traj.final_belief);

  // 6. Stitch the predicted-position timelines (index 0 is the initial guess).
  const std::size_t total = synced.size();
  run.report.T = total - 1;
  run.truth_pos.reserve(total);
  for (const TruthSample& s : run.log.truth) {
    run.truth_pos.push_back(s.p);
  }
  auto stitched = [&](const PhaseTrajectory& val_traj) {
    std::vector<Eigen::Vector3d> pos;
    pos.reserve(total);
    pos.push_back(x0.segment<3>(StateIndex::kPos));
    for (const Eigen::VectorXd& x : train_traj.predicted) {
      pos.push_back(x.segment<3>(StateIndex::kPos));
    }
    for (const Eigen::VectorXd& x : val_traj.predicted) {
      if (pos.size() == total) {
        break;  // the last step's prediction has no truth sample to compare against
      }
      pos.push_back(x.segment<3>(StateIndex::kPos));
    }
    return pos;
  };
  run.ekf_pos = stitched(ekf_traj);
  run.rekf_pos = stitched(rekf_traj);

  // 7. Post-reacquisition score.
  run.report.K = reacquisition_index(run.aligned, run.val_denial.start);
  run.report.ekf = rmse_bar(run.truth_pos, run.ekf_pos, run.report.K, run.report.T);
  run.report.rekf = rmse_bar(run.truth_pos, run.rekf_pos, run.report.K, run.report.T);

  run.report.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();

  if (out_dir) {
    export_trajectories(run, *out_dir);
    append_report_csv(run.report, *out_dir);
  }
  return run;
}

void export_trajectories(const ExperimentRun& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<double> times;
  times.reserve(run.log.imu.size());
  for (const ImuSample& s : run.log.imu) {
    times.push_back(s.t);
  }
  write_positions_csv(dir / "traj_truth.csv", times, run.truth_pos);
  write_positions_csv(dir / "traj_ekf.csv", times, run.ekf_pos);
  write_positions_csv(dir / "traj_rekf.csv", times, run.rekf_pos);

  std::ofstream out(dir / "denial.csv");
  if (!out) {
    throw std::runtime_error("export_trajectories: cannot write denial.csv");
  }
  out << "phase,start_s,end_s\n";
  out << "training," << format_full(run.train_denial.start) << ','
      << format_full(run.train_denial.end()) << '\n';
  out << "validation," << format_full(run.val_denial.start) << ','
      << format_full(run.val_denial.end()) << '\n';
}

void append_report_csv(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / "report.csv";
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw std::runtime_error("append_report_csv: cannot write " + path.string());
  }
  if (fresh) {
    out << "filter,c_hat,rmse_total,rmse_n,rmse_e,rmse_d,K,T,seed\n";
  }
  auto row = [&](const char* name, const RmseBreakdown& r) {
    out << name << ',' << format_full(report.c_hat) << ',' << format_full(r.total) << ','
        << format_full(r.north) << ',' << format_full(r.east) << ',' << format_full(r.down)
        << ',' << report.K << ',' << report.T << ',' << report.seed << '\n';
  };
  row("ekf", report.ekf);
  row("rekf", report.rekf);
}

RecomputedMetrics evaluate_exported(const std::filesystem::path& dir) {
  std::vector<double> times;
  const auto truth = read_positions_csv(dir / "traj_truth.csv", &times);
  const auto ekf = read_positions_csv(dir / "traj_ekf.csv", nullptr);
  const auto rekf = read_positions_csv(dir / "traj_rekf.csv", nullptr);

  std::ifstream in(dir / "denial.csv");
  if (!in) {
    throw std::runtime_error("evaluate_exported: cannot open denial.csv");
  }
  std::string line;
  double val_end = -1.0;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    char phase[32];
    double start, end;
    if (std::sscanf(line.c_str(), "%31[^,],%lf,%lf", phase, &start, &end) == 3 &&
        std::string(phase) == "validation") {
      val_end = end;
    }
  }
  if (val_end < 0.0) {
    throw std::runtime_error("evaluate_exported: denial.csv has no validation row");
  }

  RecomputedMetrics m;
  m.T = truth.size() - 1;
  m.K = 0;
  while (m.K < times.size() && times[m.K] < val_end) {
    ++m.K;
  }
  m.ekf = rmse_bar(truth, ekf, m.K, m.T);
  m.rekf = rmse_bar(truth, rekf, m.K, m.T);
  return m;
}

}  // namespace robnav
