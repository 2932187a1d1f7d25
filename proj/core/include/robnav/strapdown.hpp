/// @file strapdown.hpp Discrete process model of the aided-INS state, its Jacobians
/// and the process/measurement covariance builders.

#pragma once

#include "robnav/types.hpp"

namespace robnav {

/// One-step linearization of the process/measurement model around a state.
struct LinearizedModel {
  Matrix16d A = Matrix16d::Identity();      ///< state Jacobian of the process map
  Matrix16x6d G = Matrix16x6d::Zero();      ///< noise Jacobian of the process map
  Matrix6d Q_eps = Matrix6d::Zero();        ///< input-channel process noise covariance
  Matrix16d Q_tilde = Matrix16d::Zero();    ///< additive discretization noise covariance
  Matrix6x16d C = Matrix6x16d::Zero();      ///< measurement matrix selecting [p; v]
  Matrix6d R = Matrix6d::Zero();            ///< measurement noise covariance
};

/// The state-independent matrices of the model.
struct ModelCovariances {
  Matrix6d Q_eps;
  Matrix16d Q_tilde;
  Matrix6x16d C;
  Matrix6d R;
};

/// First-order strapdown update over one sampling interval:
///   q+ = normalize(q * quat_exp(omega_m*delta - delta_omega_b + delta*eps_w))
///   v+ = v + R(q) (a_m*delta - delta_a_b + delta*eps_v) + g_n*delta
///   p+ = p + v*delta
/// with constant biases. `eps` stacks [eps_w; eps_v]; pass zeros for the
/// nominal prediction. Throws std::invalid_argument on non-finite inputs.
NavState propagate(const NavState& x, const ImuSample& u, const Vector6d& eps,
                   const NoiseConfig& cfg);

/// Analytic derivative of propagate (at eps = 0) with respect to the flattened
/// state, in the ambient 16-dimensional chart (normalizations included).
Matrix16d jacobian_state(const NavState& x, const ImuSample& u, const NoiseConfig& cfg);

/// Analytic derivative of propagate with respect to eps, at eps = 0.
Matrix16x6d jacobian_noise(const NavState& x, const ImuSample& u, const NoiseConfig& cfg);

/// Builds Q_eps = blockdiag(delta*sigma2_omega I3, delta*sigma2_v I3),
/// Q_tilde = blockdiag(kappa, sigma2_q I3, sigma2_p I3, kappa I9),
/// C selecting [p; v], and R = diag(r).
ModelCovariances build_covariances(const NoiseConfig& cfg);

/// Covariances plus Jacobians evaluated at (x, u).
LinearizedModel linearize(const NavState& x, const ImuSample& u, const NoiseConfig& cfg);

}  // namespace robnav
