/// @file types.hpp Core state, sample and noise-configuration types shared across the library.

#pragma once

#include <Eigen/Dense>

namespace robnav {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector16d = Eigen::Matrix<double, 16, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix16d = Eigen::Matrix<double, 16, 16>;
using Matrix16x6d = Eigen::Matrix<double, 16, 6>;
using Matrix6x16d = Eigen::Matrix<double, 6, 16>;

/// Offsets of the state blocks inside the flattened 16-vector
/// [q(4), v(3), p(3), gyro increment bias(3), accel increment bias(3)].
struct StateIndex {
  static constexpr int kQuat = 0;
  static constexpr int kVel = 4;
  static constexpr int kPos = 7;
  static constexpr int kGyroBias = 10;
  static constexpr int kAccelBias = 13;
  static constexpr int kDim = 16;
  static constexpr int kMeasDim = 6;
};

/// Full navigation state. The quaternion is scalar-first and rotates
/// body-frame vectors into the North-East-Down frame. Biases are stored as
/// per-step increments: the gyro bias in radians over one sampling interval,
/// the accelerometer bias in m/s over one sampling interval.
struct NavState {
  Eigen::Vector4d q{1.0, 0.0, 0.0, 0.0};  ///< attitude, unit norm
  Eigen::Vector3d v{0.0, 0.0, 0.0};       ///< NED velocity [m/s]
  Eigen::Vector3d p{0.0, 0.0, 0.0};       ///< NED position [m]
  Eigen::Vector3d delta_omega_b{0.0, 0.0, 0.0};  ///< angular-increment bias [rad]
  Eigen::Vector3d delta_a_b{0.0, 0.0, 0.0};      ///< velocity-increment bias [m/s]

  /// Flattens to the 16-vector layout of StateIndex. Exact inverse of from_vector.
  Vector16d to_vector() const;
  static NavState from_vector(const Vector16d& x);
};

/// One inertial sample: gyro rate and specific force in the body frame.
struct ImuSample {
  double t = 0.0;                            ///< timestamp [s]
  Eigen::Vector3d omega_m{0.0, 0.0, 0.0};    ///< measured angular rate [rad/s]
  Eigen::Vector3d a_m{0.0, 0.0, 0.0};        ///< measured specific force [m/s^2]
};

/// One GPS/barometer fix: NED position (GPS horizontal, barometric vertical)
/// and NED velocity. `held` marks values frozen by a denial window.
struct FixSample {
  double t = 0.0;
  Eigen::Vector3d pos{0.0, 0.0, 0.0};  ///< [m]
  Eigen::Vector3d vel{0.0, 0.0, 0.0};  ///< [m/s]
  bool held = false;
};

/// A 6-vector measurement [p; v] resampled onto the IMU clock by causal
/// zero-order hold. `held` is analysis metadata carried over from the source
/// fix; filters never look at it.
struct AlignedMeasurement {
  double t = 0.0;
  Vector6d y = Vector6d::Zero();
  bool held = false;
};

/// IMU sample and aligned measurement sharing one timestamp; the unit the
/// filter recursions and the tolerance learner consume.
struct SyncedSample {
  ImuSample imu;
  AlignedMeasurement meas;
};

/// Noise and discretization parameters of the process/measurement model.
struct NoiseConfig {
  double sigma2_omega = 1e-4;  ///< gyro noise intensity [rad^2/s]
  double sigma2_v = 2.5e-3;    ///< accelerometer noise intensity [m^2/s^3]
  double sigma2_q = 1e-8;      ///< discretization noise, quaternion vector part
  double sigma2_p = 1e-6;      ///< discretization noise, velocity part
  double kappa = 1e-10;        ///< regularization variance keeping Q_tilde invertible
  Vector6d r = (Vector6d() << 1.96, 1.96, 2.56, 0.1225, 0.1225, 0.16).finished();
  double delta = 0.02;         ///< sampling time [s]
  Eigen::Vector3d g_n{0.0, 0.0, 9.81};  ///< gravity in NED [m/s^2]

  /// Throws std::invalid_argument when a variance or the sampling time is not positive.
  void validate() const;
};

}  // namespace robnav
