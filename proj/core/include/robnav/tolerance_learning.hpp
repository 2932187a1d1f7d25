/// @file tolerance_learning.hpp Data-driven selection of the mismatch tolerance.
///
/// A bank of robust filters, one per candidate tolerance, runs once over a
/// training stream while each candidate accumulates its output-prediction
/// loss sum ||y_k - C x_hat_{c,k}||^2 incrementally. The candidate with the
/// smallest mean loss wins (ties go to the smallest tolerance). An a-priori
/// filter runs alongside; its trajectory is the training-phase estimate and
/// its final belief seeds the validation phase.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "robnav/robust_filter.hpp"
#include "robnav/types.hpp"

namespace robnav {

/// Strictly increasing, non-negative candidate tolerances.
struct ToleranceGrid {
  std::vector<double> values;

  /// n equispaced points on [lo, hi], endpoints included.
  static ToleranceGrid linear(double lo, double hi, int n);
  /// Throws std::invalid_argument when empty, negative, or not strictly increasing.
  void validate() const;
};

struct LearnReport {
  double c_hat = 0.0;             ///< selected tolerance
  std::vector<double> losses;     ///< mean squared output-prediction error per candidate
  std::vector<double> grid;       ///< candidate values, aligned with losses
  std::vector<bool> survived;     ///< false where the candidate filter aborted
  std::size_t n = 0;              ///< number of loss terms (training length)
};

/// Deterministic trajectories of one filter pass over a stream.
struct PhaseTrajectory {
  std::vector<Eigen::VectorXd> filtered;     ///< x_hat_{k|k} per consumed sample
  std::vector<Eigen::VectorXd> predicted;    ///< x_hat_{k+1} per consumed sample
  std::vector<Eigen::MatrixXd> predictor_cov;  ///< V_k at the entry of each step
  std::vector<double> theta;                 ///< inflation parameter per step
  GaussianBelief final_belief;               ///< belief after the last step
};

/// Runs one filter over every sample of `data`, starting from `init`.
/// Empty data returns the initial belief unchanged.
PhaseTrajectory run_phase(std::span<const SyncedSample> data, const StateSpaceModel& model,
                          const FilterConfig& cfg, const GaussianBelief& init);

/// Learns the tolerance from a stream {(u_0,y_0) ... (u_N,y_N)} of N+1
/// samples: every filter consumes samples 0..N-1 and the loss for candidate c
/// sums ||y_k - C x_hat_{c,k}||^2 over k = 1..N, evaluated online before each
/// consumption. `base_cfg` supplies the bisection settings; its tolerance is
/// ignored. A candidate whose filter aborts is dropped with a warning; if all
/// candidates abort a NumericalError is thrown. When `apriori_out` is given it
/// receives the a-priori filter's trajectory (tolerance `a_priori_c`).
LearnReport learn_tolerance(std::span<const SyncedSample> data, const ToleranceGrid& grid,
                            const GaussianBelief& init, const StateSpaceModel& model,
                            const FilterConfig& base_cfg, double a_priori_c = 0.0,
                            PhaseTrajectory* apriori_out = nullptr);

}  // namespace robnav
