/// @file nav_model.hpp The 16-state aided-INS model behind the StateSpaceModel interface.

#pragma once

#include "robnav/state_space_model.hpp"
#include "robnav/strapdown.hpp"
#include "robnav/types.hpp"

namespace robnav {

/// Wraps the strapdown process model and the covariance builders. Stateless
/// apart from the configuration; safe to share across concurrent filters.
class NavSystemModel final : public StateSpaceModel {
 public:
  explicit NavSystemModel(const NoiseConfig& cfg);

  int state_dim() const override { return StateIndex::kDim; }
  int meas_dim() const override { return StateIndex::kMeasDim; }

  Eigen::VectorXd propagate_mean(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& u) const override;
  void linearize(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                 Eigen::MatrixXd& A, Eigen::MatrixXd& G) const override;

  const Eigen::MatrixXd& measurement_matrix() const override { return C_; }
  const Eigen::MatrixXd& measurement_noise_cov() const override { return R_; }
  const Eigen::MatrixXd& process_noise_cov() const override { return Q_eps_; }
  const Eigen::MatrixXd& additive_noise_cov() const override { return Q_tilde_; }

  /// Renormalizes the quaternion block.
  void fixup_state(Eigen::VectorXd& x) const override;

  const NoiseConfig& noise_config() const { return cfg_; }

 private:
  NoiseConfig cfg_;
  Eigen::MatrixXd C_;
  Eigen::MatrixXd R_;
  Eigen::MatrixXd Q_eps_;
  Eigen::MatrixXd Q_tilde_;
};

}  // namespace robnav
