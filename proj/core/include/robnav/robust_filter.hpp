/// @file robust_filter.hpp Extended Kalman filtering with a per-step
/// covariance inflation that hedges against model mismatch.
///
/// The recursion keeps a predictor belief (x_hat_k, V_k) and, at each step,
/// performs a measurement update, propagates through the nonlinear process
/// map, and forms the nominal one-step predictor covariance
///
///   P = A (V^-1 + C' R^-1 C)^-1 A' + Q_add + G Q_proc G'.
///
/// The plain EKF carries P forward as the next V. The robust variant instead
/// carries V = (P^-1 - theta I)^-1, where theta > 0 is chosen so that the
/// scalar function
///
///   gamma(P, theta) = 1/2 { log det(I - theta P) + tr[(I - theta P)^-1 - I] }
///
/// equals a configured tolerance c. gamma is zero at theta = 0, strictly
/// increasing, and diverges as theta approaches 1/lambda_max(P), so the
/// equation has a unique root found by bisection. c = 0 degenerates to the
/// EKF exactly (same code path).

#pragma once

#include <Eigen/Dense>

#include "robnav/state_space_model.hpp"

namespace robnav {

/// Predictor-form belief: mean and covariance of the one-step-ahead state.
struct GaussianBelief {
  Eigen::VectorXd x_hat;
  Eigen::MatrixXd V;
};

struct FilterConfig {
  double tolerance = 0.0;        ///< mismatch budget c per step, in nats; 0 = EKF
  double bisection_tol = 1e-9;   ///< residual bound on |gamma - c|
  int bisection_max_iter = 200;
  double theta_margin = 1e-12;   ///< relative exclusion band below 1/lambda_max
};

/// gamma evaluated from the eigenvalues of P.
double gamma_from_spectrum(const Eigen::VectorXd& eigenvalues, double theta);

/// gamma(P, theta) for symmetric positive definite P and
/// 0 <= theta < 1/lambda_max(P). Throws std::domain_error outside that range
/// and std::invalid_argument for non-SPD P.
double gamma(const Eigen::MatrixXd& P, double theta);

/// Unique theta in (0, 1/lambda_max(P)) with gamma(P, theta) = c, found by
/// bisection to within cfg.bisection_tol. Throws std::invalid_argument for
/// non-SPD P or c <= 0 and NumericalError when the residual cannot be met
/// within cfg.bisection_max_iter iterations.
double solve_theta(const Eigen::MatrixXd& P, double c, const FilterConfig& cfg);

struct StepResult {
  GaussianBelief next;           ///< (x_hat_{k+1}, V_{k+1})
  Eigen::VectorXd filtered;      ///< x_hat_{k|k}
  Eigen::MatrixXd p_nominal;     ///< P_{k+1} before inflation
  double theta = 0.0;            ///< 0 when the tolerance is 0 or inflation was skipped
  bool robust_applied = false;
};

/// One step of the robust recursion. With cfg.tolerance == 0 this is exactly
/// the EKF. A bisection failure falls back to the EKF covariance for the step
/// and warns on stderr; a covariance factorization failure throws
/// NumericalError.
StepResult rekf_step(const GaussianBelief& belief, const Eigen::VectorXd& u,
                     const Eigen::VectorXd& y, const StateSpaceModel& model,
                     const FilterConfig& cfg);

/// rekf_step with the tolerance forced to zero.
StepResult ekf_step(const GaussianBelief& belief, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& y, const StateSpaceModel& model);

/// Convenience wrapper owning the evolving belief. Single writer per
/// instance; independent instances may run in parallel.
class RobustEkf {
 public:
  RobustEkf(const StateSpaceModel& model, const FilterConfig& cfg, GaussianBelief init);

  /// Consumes one (u, y) pair; returns the filtered state and advances the
  /// belief. Rethrows numerical failures annotated with the step index.
  StepResult step(const Eigen::VectorXd& u, const Eigen::VectorXd& y);

  const GaussianBelief& belief() const { return belief_; }
  std::size_t steps_taken() const { return steps_; }
  const FilterConfig& config() const { return cfg_; }

 private:
  const StateSpaceModel* model_;
  FilterConfig cfg_;
  GaussianBelief belief_;
  std::size_t steps_ = 0;
};

}  // namespace robnav
