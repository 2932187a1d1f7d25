#include "robnav/nav_model.hpp"

#include "robnav/quaternion.hpp"

namespace robnav {

NavSystemModel::NavSystemModel(const NoiseConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const ModelCovariances cov = build_covariances(cfg_);
  C_ = cov.C;
  R_ = cov.R;
  Q_eps_ = cov.Q_eps;
  Q_tilde_ = cov.Q_tilde;
}

namespace {
ImuSample imu_from_vector(const Eigen::VectorXd& u) {
  ImuSample s;
  s.omega_m = u.head<3>();
  s.a_m = u.tail<3>();
  return s;
}
}  // namespace

Eigen::VectorXd NavSystemModel::propagate_mean(const Eigen::VectorXd& x,
                                               const Eigen::VectorXd& u) const {
  const NavState next =
      propagate(NavState::from_vector(x), imu_from_vector(u), Vector6d::Zero(), cfg_);
  return next.to_vector();
}

void NavSystemModel::linearize(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                               Eigen::MatrixXd& A, Eigen::MatrixXd& G) const {
  const NavState state = NavState::from_vector(x);
  const ImuSample imu = imu_from_vector(u);
  A = jacobian_state(state, imu, cfg_);
  G = jacobian_noise(state, imu, cfg_);
}

void NavSystemModel::fixup_state(Eigen::VectorXd& x) const {
  x.segment<4>(StateIndex::kQuat) =
      quat_normalize(Eigen::Vector4d(x.segment<4>(StateIndex::kQuat)));
}

}  // namespace robnav
