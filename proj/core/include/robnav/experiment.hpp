/// @file experiment.hpp End-to-end GPS-denial experiments: train the tolerance,
/// validate EKF against the robust filter, score the post-reacquisition window.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "robnav/alignment.hpp"
#include "robnav/denial.hpp"
#include "robnav/log_io.hpp"
#include "robnav/metrics.hpp"
#include "robnav/simulator.hpp"
#include "robnav/tolerance_learning.hpp"
#include "robnav/types.hpp"

namespace robnav {

struct TrainingConfig {
  double length_s = 30.0;  ///< training phase duration
  DenialScenario denial{15.0, 8.0, DenialScenario::Phase::Training};
  double a_priori_c = 0.0;  ///< tolerance of the training-phase filter
};

enum class ValidationType { Straight, Turn };

struct ValidationConfig {
  ValidationType type = ValidationType::Straight;
  /// Denial window. A negative start means "derive from type": 40 s for a
  /// straight-leg denial, 36 s for a turn denial.
  DenialScenario denial{-1.0, 8.0, DenialScenario::Phase::Validation};

  double resolved_start() const {
    if (denial.start >= 0.0) {
      return denial.start;
    }
    return type == ValidationType::Straight ? 40.0 : 36.0;
  }
};

struct FlightSource {
  enum class Kind { Simulate, Load };
  Kind kind = Kind::Simulate;
  std::filesystem::path log_dir;  ///< for Load
  TrajectoryPlan plan = default_circuit_plan();
  SensorModel sensors;
};

struct ExperimentConfig {
  NoiseConfig noise;
  FlightSource flight;
  Vector16d init_state = default_init_state();
  bool init_from_flight = true;  ///< override q/p of init_state from the flight data
  double init_cov_scale = 1e-3;  ///< V_0 = scale * identity
  ToleranceGrid grid = ToleranceGrid::linear(2e-4, 1.0, 40);
  FilterConfig filter;  ///< bisection settings; tolerance field unused
  TrainingConfig training;
  ValidationConfig validation;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "out";

  static Vector16d default_init_state();
  /// Throws ConfigError on inconsistent phase/denial layout.
  void validate() const;
};

struct EvalReport {
  double c_hat = 0.0;
  RmseBreakdown ekf;
  RmseBreakdown rekf;
  std::size_t K = 0;  ///< first post-reacquisition measurement index
  std::size_t T = 0;  ///< final index
  std::uint64_t seed = 0;
  double runtime_s = 0.0;
};

/// Everything a single-seed run produces; kept for export and inspection.
struct ExperimentRun {
  EvalReport report;
  LearnReport learn;
  FlightLog log;
  std::vector<AlignedMeasurement> aligned;      ///< after denial injection
  std::vector<Eigen::Vector3d> truth_pos;       ///< indices 0..T
  std::vector<Eigen::Vector3d> ekf_pos;         ///< predicted positions, 0..T
  std::vector<Eigen::Vector3d> rekf_pos;        ///< predicted positions, 0..T
  DenialScenario train_denial;
  DenialScenario val_denial;  ///< with the start resolved
};

/// Runs the full protocol for one seed: simulate or load the flight, inject
/// both denial windows, align, learn the tolerance on the training prefix,
/// validate EKF (c = 0) and REKF (c = c_hat) from the handed-off belief, and
/// score both over the post-reacquisition window. When out_dir is given,
/// artifacts are flushed there as they become available (logs, then the
/// learning summary, then trajectories and report.csv).
ExperimentRun run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                             const std::optional<std::filesystem::path>& out_dir);

/// Writes traj_truth.csv, traj_ekf.csv, traj_rekf.csv (t,pn,pe,pd) and
/// denial.csv (phase,start_s,end_s) under dir.
void export_trajectories(const ExperimentRun& run, const std::filesystem::path& dir);

/// Appends per-filter rows to dir/report.csv, writing the header when absent:
/// filter,c_hat,rmse_total,rmse_n,rmse_e,rmse_d,K,T,seed
void append_report_csv(const EvalReport& report, const std::filesystem::path& dir);

/// Recomputes both RmseBreakdowns from trajectories previously written by
/// export_trajectories, taking K from the validation row of denial.csv.
struct RecomputedMetrics {
  RmseBreakdown ekf;
  RmseBreakdown rekf;
  std::size_t K = 0;
  std::size_t T = 0;
};
RecomputedMetrics evaluate_exported(const std::filesystem::path& dir);

}  // namespace robnav
