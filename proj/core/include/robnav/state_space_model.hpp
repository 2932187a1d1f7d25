/// @file state_space_model.hpp Model interface consumed by the filter recursions.

#pragma once

#include <Eigen/Dense>

namespace robnav {

/// A discrete state-space model
///   x_{k+1} = f(x_k, u_k, eps_k) + additive noise,   y_k = C x_k + meas noise,
/// presented through dynamic-size matrices so the same filter code runs on the
/// 16-state navigation model and on small test systems.
class StateSpaceModel {
 public:
  virtual ~StateSpaceModel() = default;

  virtual int state_dim() const = 0;
  virtual int meas_dim() const = 0;

  /// f(x, u, 0).
  virtual Eigen::VectorXd propagate_mean(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& u) const = 0;

  /// Fills A = df/dx and G = df/deps at (x, u, eps = 0).
  virtual void linearize(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                         Eigen::MatrixXd& A, Eigen::MatrixXd& G) const = 0;

  virtual const Eigen::MatrixXd& measurement_matrix() const = 0;   // C
  virtual const Eigen::MatrixXd& measurement_noise_cov() const = 0;  // R
  virtual const Eigen::MatrixXd& process_noise_cov() const = 0;      // through G
  virtual const Eigen::MatrixXd& additive_noise_cov() const = 0;     // added to P

  /// Hook applied to the state after the measurement update; the navigation
  /// model renormalizes the quaternion here. Default: no-op.
  virtual void fixup_state(Eigen::VectorXd& x) const { (void)x; }
};

}  // namespace robnav
