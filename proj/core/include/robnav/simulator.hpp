/// @file simulator.hpp Synthetic flight generation: exact inverse-kinematics
/// sensor streams plus configurable bias and noise.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "robnav/trajectory.hpp"
#include "robnav/types.hpp"

namespace robnav {

/// Ground-truth kinematic state at one IMU timestamp, as stored in logs.
struct TruthSample {
  double t = 0.0;
  Eigen::Vector4d q{1.0, 0.0, 0.0, 0.0};
  Eigen::Vector3d v{0.0, 0.0, 0.0};
  Eigen::Vector3d p{0.0, 0.0, 0.0};
};

/// One simulated (or loaded) flight: 50 Hz IMU, 5 Hz fixes, 50 Hz truth.
struct FlightLog {
  std::vector<ImuSample> imu;
  std::vector<FixSample> fixes;
  std::vector<TruthSample> truth;
};

/// True sensor imperfections. IMU noise standard deviations derive from the
/// NoiseConfig intensities (sqrt(delta * sigma2)), so a simulated flight is
/// statistically consistent with the filter's nominal model; `noise_scale`
/// scales every random term (0 gives noise-free sensors).
struct SensorModel {
  Eigen::Vector3d gyro_bias{2e-3, -1.5e-3, 1e-3};       ///< [rad/s]
  Eigen::Vector3d accel_bias{0.05, -0.04, 0.06};        ///< [m/s^2]
  Eigen::Vector3d fix_pos_std{0.7, 0.7, 0.8};           ///< GPS horizontal / baro vertical [m]
  Eigen::Vector3d fix_vel_std{0.35, 0.35, 0.4};         ///< [m/s]
  double fix_rate = 5.0;                                ///< [Hz]
  double noise_scale = 1.0;
};

/// Samples the plan on the IMU grid (t = k * delta), synthesizes gyro /
/// accelerometer outputs by inverse kinematics plus bias plus noise, and
/// produces fixes as truth plus noise on the decimated grid. Deterministic
/// for a given seed; `seed` overrides plan.seed when present.
FlightLog simulate_flight(const TrajectoryPlan& plan, const NoiseConfig& cfg,
                          const SensorModel& sensors = {},
                          std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace robnav
