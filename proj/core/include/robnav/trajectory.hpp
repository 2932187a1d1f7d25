/// @file trajectory.hpp Piecewise-analytic flight plans: takeoff, straight legs
/// with smooth speed ramps, and constant-rate turns.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace robnav {

struct TrajectorySegment {
  enum class Kind { Takeoff, Straight, Turn };

  Kind kind = Kind::Straight;
  double duration = 0.0;  ///< [s]

  double climb_height = 0.0;    ///< Takeoff: height gained [m], positive up
  double speed_in = 0.0;        ///< Straight: entry speed [m/s]
  double speed_out = 0.0;       ///< Straight: exit speed [m/s]
  double heading_change = 0.0;  ///< Turn: signed heading change [rad]
  double turn_speed = 0.0;      ///< Turn: constant speed [m/s]

  static TrajectorySegment takeoff(double duration, double height);
  static TrajectorySegment straight(double duration, double speed_in, double speed_out);
  static TrajectorySegment turn(double duration, double heading_change, double speed);
};

/// Contiguous segments flown from a start pose. Kinematics are closed-form
/// per segment, so truth sampling has no integration error.
struct TrajectoryPlan {
  std::vector<TrajectorySegment> segments;
  Eigen::Vector3d start_pos{0.0, 0.0, 0.0};  ///< NED [m]
  double start_heading = 0.0;                ///< [rad], 0 = North
  std::uint64_t seed = 1;                    ///< default RNG seed for simulation

  double duration() const;
  /// Throws std::invalid_argument on speed discontinuities between segments
  /// or non-positive durations.
  void validate() const;
};

/// Instantaneous ground truth along a plan.
struct KinematicSample {
  Eigen::Vector3d p{0.0, 0.0, 0.0};
  Eigen::Vector3d v{0.0, 0.0, 0.0};
  Eigen::Vector3d a{0.0, 0.0, 0.0};
  double heading = 0.0;
  double heading_rate = 0.0;
};

/// Evaluates the plan at time t (clamped to [0, duration]).
KinematicSample plan_kinematics(const TrajectoryPlan& plan, double t);

/// The default 106 s counterclockwise circuit: takeoff, straight legs and
/// 90-degree turns laid out so that a turn starts at t = 36 s and the leg
/// from t = 40 s onward is straight.
TrajectoryPlan default_circuit_plan(double cruise_speed = 5.0, double altitude = 20.0);

}  // namespace robnav
