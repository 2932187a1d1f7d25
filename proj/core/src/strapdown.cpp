#include "robnav/strapdown.hpp"

#include <cmath>
#include <stdexcept>

#include "robnav/quaternion.hpp"

namespace robnav {

Vector16d NavState::to_vector() const {
  Vector16d x;
  x.segment<4>(StateIndex::kQuat) = q;
  x.segment<3>(StateIndex::kVel) = v;
  x.segment<3>(StateIndex::kPos) = p;
  x.segment<3>(StateIndex::kGyroBias) = delta_omega_b;
  x.segment<3>(StateIndex::kAccelBias) = delta_a_b;
  return x;
}

NavState NavState::from_vector(const Vector16d& x) {
  NavState s;
  s.q = x.segment<4>(StateIndex::kQuat);
  s.v = x.segment<3>(StateIndex::kVel);
  s.p = x.segment<3>(StateIndex::kPos);
  s.delta_omega_b = x.segment<3>(StateIndex::kGyroBias);
  s.delta_a_b = x.segment<3>(StateIndex::kAccelBias);
  return s;
}

void NoiseConfig::validate() const {
  const bool variances_ok = sigma2_omega > 0.0 && sigma2_v > 0.0 && sigma2_q > 0.0 &&
                            sigma2_p > 0.0 && kappa > 0.0 && (r.array() > 0.0).all();
  if (!variances_ok) {
    throw std::invalid_argument("NoiseConfig: all variances must be positive");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("NoiseConfig: sampling time must be positive");
  }
}

NavState propagate(const NavState& x, const ImuSample& u, const Vector6d& eps,
                   const NoiseConfig& cfg) {
  if (!x.to_vector().allFinite() || !u.omega_m.allFinite() || !u.a_m.allFinite() ||
      !eps.allFinite()) {
    throw std::invalid_argument("propagate: non-finite input component");
  }

  const double dt = cfg.delta;
  const Eigen::Vector3d delta_theta = u.omega_m * dt - x.delta_omega_b + dt * eps.head<3>();
  const Eigen::Vector3d delta_vel = u.a_m * dt - x.delta_a_b + dt * eps.tail<3>();

  NavState out;
  out.q = quat_normalize(quat_mul(x.q, quat_exp(delta_theta)));
  out.v = x.v + quat_to_rotation(x.q) * delta_vel + cfg.g_n * dt;
  out.p = x.p + x.v * dt;
  out.delta_omega_b = x.delta_omega_b;
  out.delta_a_b = x.delta_a_b;
  return out;
}

Matrix16d jacobian_state(const NavState& x, const ImuSample& u, const NoiseConfig& cfg) {
  const double dt = cfg.delta;
  const Eigen::Vector3d delta_theta = u.omega_m * dt - x.delta_omega_b;
  const Eigen::Vector3d delta_vel = u.a_m * dt - x.delta_a_b;

  const Eigen::Vector4d e = quat_exp(delta_theta);
  const Eigen::Matrix4d n_jac = quat_normalize_jacobian(quat_mul(x.q, e));

  Matrix16d A = Matrix16d::Identity();
  A.block<4, 4>(StateIndex::kQuat, StateIndex::kQuat) = n_jac * quat_right_matrix(e);
  A.block<4, 3>(StateIndex::kQuat, StateIndex::kGyroBias) =
      -n_jac * quat_left_matrix(x.q) * quat_exp_jacobian(delta_theta);
  A.block<3, 4>(StateIndex::kVel, StateIndex::kQuat) = rotate_vector_jacobian(x.q, delta_vel);
  A.block<3, 3>(StateIndex::kVel, StateIndex::kAccelBias) = -quat_to_rotation(x.q);
  A.block<3, 3>(StateIndex::kPos, StateIndex::kVel) = dt * Eigen::Matrix3d::Identity();
  return A;
}

Matrix16x6d jacobian_noise(const NavState& x, const ImuSample& u, const NoiseConfig& cfg) {
  const double dt = cfg.delta;
  const Eigen::Vector3d delta_theta = u.omega_m * dt - x.delta_omega_b;

  const Eigen::Vector4d e = quat_exp(delta_theta);
  const Eigen::Matrix4d n_jac = quat_normalize_jacobian(quat_mul(x.q, e));

  Matrix16x6d G = Matrix16x6d::Zero();
  G.block<4, 3>(StateIndex::kQuat, 0) =
      dt * n_jac * quat_left_matrix(x.q) * quat_exp_jacobian(delta_theta);
  G.block<3, 3>(StateIndex::kVel, 3) = dt * quat_to_rotation(x.q);
  return G;
}

ModelCovariances build_covariances(const NoiseConfig& cfg) {
  ModelCovariances m;

  m.Q_eps = Matrix6d::Zero();
  m.Q_eps.topLeftCorner<3, 3>() =
      cfg.delta * cfg.sigma2_omega * Eigen::Matrix3d::Identity();
  m.Q_eps.bottomRightCorner<3, 3>() =
      cfg.delta * cfg.sigma2_v * Eigen::Matrix3d::Identity();

  // 1 + 3 + 3 + 9 block layout.
  m.Q_tilde = Matrix16d::Zero();
  m.Q_tilde(0, 0) = cfg.kappa;
  m.Q_tilde.block<3, 3>(1, 1) = cfg.sigma2_q * Eigen::Matrix3d::Identity();
  m.Q_tilde.block<3, 3>(4, 4) = cfg.sigma2_p * Eigen::Matrix3d::Identity();
  m.Q_tilde.block<9, 9>(7, 7) = cfg.kappa * Eigen::Matrix<double, 9, 9>::Identity();

  m.C = Matrix6x16d::Zero();
  m.C.block<3, 3>(0, StateIndex::kPos) = Eigen::Matrix3d::Identity();
  m.C.block<3, 3>(3, StateIndex::kVel) = Eigen::Matrix3d::Identity();

  m.R = cfg.r.asDiagonal();
  return m;
}

LinearizedModel linearize(const NavState& x, const ImuSample& u, const NoiseConfig& cfg) {
  const ModelCovariances cov = build_covariances(cfg);
  LinearizedModel lin;
  lin.A = jacobian_state(x, u, cfg);
  lin.G = jacobian_noise(x, u, cfg);
  lin.Q_eps = cov.Q_eps;
  lin.Q_tilde = cov.Q_tilde;
  lin.C = cov.C;
  lin.R = cov.R;
  return lin;
}

}  // namespace robnav
