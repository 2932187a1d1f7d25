#include "robnav/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace robnav {

namespace {

double segment_entry_speed(const TrajectorySegment& s) {
  switch (s.kind) {
    case TrajectorySegment::Kind::Takeoff:
      return 0.0;
    case TrajectorySegment::Kind::Straight:
      return s.speed_in;
    case TrajectorySegment::Kind::Turn:
      return s.turn_speed;
  }
  return 0.0;
}

double segment_exit_speed(const TrajectorySegment& s) {
  switch (s.kind) {
    case TrajectorySegment::Kind::Takeoff:
      return 0.0;
    case TrajectorySegment::Kind::Straight:
      return s.speed_out;
    case TrajectorySegment::Kind::Turn:
      return s.turn_speed;
  }
  return 0.0;
}

/// Entry pose of a segment -> sample at local time tau in [0, duration].
KinematicSample eval_segment(const TrajectorySegment& s, const Eigen::Vector3d& p0,
                             double heading0, double tau) {
  KinematicSample out;
  out.p = p0;
  out.heading = heading0;

  switch (s.kind) {
    case TrajectorySegment::Kind::Takeoff: {
      const double T = s.duration;
      const double h = s.climb_height;
      const double phase = std::numbers::pi * tau / T;
      out.p(2) = p0(2) - 0.5 * h * (1.0 - std::cos(phase));
      out.v = Eigen::Vector3d(0.0, 0.0, -0.5 * h * std::numbers::pi / T * std::sin(phase));
      out.a = Eigen::Vector3d(
          0.0, 0.0, -0.5 * h * std::numbers::pi * std::numbers::pi / (T * T) * std::cos(phase));
      break;
    }
    case TrajectorySegment::Kind::Straight: {
      const double T = s.duration;
      const double dv = s.speed_out - s.speed_in;
      const double phase = std::numbers::pi * tau / T;
      const double speed = s.speed_in + 0.5 * dv * (1.0 - std::cos(phase));
      const double dist =
          s.speed_in * tau + 0.5 * dv * (tau - T / std::numbers::pi * std::sin(phase));
      const double accel = 0.5 * dv * std::numbers::pi / T * std::sin(phase);
      const Eigen::Vector3d dir(std::cos(heading0), std::sin(heading0), 0.0);
      out.p = p0 + dist * dir;
      out.v = speed * dir;
      out.a = accel * dir;
      break;
    }
    case TrajectorySegment::Kind::Turn: {
      const double rate = s.heading_change / s.duration;
      const double psi = heading0 + rate * tau;
      const double V = s.turn_speed;
      out.p = p0 + (V / rate) * Eigen::Vector3d(std::sin(psi) - std::sin(heading0),
                                                -(std::cos(psi) - std::cos(heading0)), 0.0);
      out.v = V * Eigen::Vector3d(std::cos(psi), std::sin(psi), 0.0);
      out.a = V * rate * Eigen::Vector3d(-std::sin(psi), std::cos(psi), 0.0);
      out.heading = psi;
      out.heading_rate = rate;
      break;
    }
  }
  return out;
}

}  // namespace

TrajectorySegment TrajectorySegment::takeoff(double duration, double height) {
  TrajectorySegment s;
  s.kind = Kind::Takeoff;
  s.duration = duration;
  s.climb_height = height;
  return s;
}

TrajectorySegment TrajectorySegment::straight(double duration, double speed_in,
                                              double speed_out) {
  TrajectorySegment s;
  s.kind = Kind::Straight;
  s.duration = duration;
  s.speed_in = speed_in;
  s.speed_out = speed_out;
  return s;
}

TrajectorySegment TrajectorySegment::turn(double duration, double heading_change,
                                          double speed) {
  TrajectorySegment s;
  s.kind = Kind::Turn;
  s.duration = duration;
  s.heading_change = heading_change;
  s.turn_speed = speed;
  return s;
}

double TrajectoryPlan::duration() const {
  double total = 0.0;
  for (const auto& s : segments) {
    total += s.duration;
  }
  return total;
}

void TrajectoryPlan::validate() const {
  if (segments.empty()) {
    throw std::invalid_argument("TrajectoryPlan: no segments");
  }
  double speed = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!(s.duration > 0.0)) {
      throw std::invalid_argument("TrajectoryPlan: segment duration must be positive");
    }
    if (s.kind == TrajectorySegment::Kind::Turn && s.heading_change == 0.0) {
      throw std::invalid_argument("TrajectoryPlan: turn with zero heading change");
    }
    if (std::abs(segment_entry_speed(s) - speed) > 1e-9) {
      throw std::invalid_argument("TrajectoryPlan: discontinuous speed at segment " +
                                  std::to_string(i));
    }
    speed = segment_exit_speed(s);
  }
}

KinematicSample plan_kinematics(const TrajectoryPlan& plan, double t) {
  Eigen::Vector3d p = plan.start_pos;
  double heading = plan.start_heading;
  double clamped = std::max(t, 0.0);

  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    const auto& s = plan.segments[i];
    const bool last = (i + 1 == plan.segments.size());
    if (clamped < s.duration || last) {
      return eval_segment(s, p, heading, std::min(clamped, s.duration));
    }
    const KinematicSample end = eval_segment(s, p, heading, s.duration);
    p = end.p;
    heading = end.heading;
    clamped -= s.duration;
  }
  return {};  // unreachable: segments is non-empty
}

TrajectoryPlan default_circuit_plan(double cruise_speed, double altitude) {
  using S = TrajectorySegment;
  constexpr double kQuarterLeft = -std::numbers::pi / 2.0;  // counterclockwise from above

  TrajectoryPlan plan;
  plan.segments = {
      S::takeoff(6.0, altitude),
      S::straight(10.0, 0.0, cruise_speed),
      S::turn(4.0, kQuarterLeft, cruise_speed),
      S::straight(16.0, cruise_speed, cruise_speed),
      S::turn(4.0, kQuarterLeft, cruise_speed),   // starts at t = 36 s
      S::straight(12.0, cruise_speed, cruise_speed),  // straight from t = 40 s
      S::turn(4.0, kQuarterLeft, cruise_speed),
      S::straight(14.0, cruise_speed, cruise_speed),
      S::turn(4.0, kQuarterLeft, cruise_speed),
      S::straight(14.0, cruise_speed, cruise_speed),
      S::turn(4.0, kQuarterLeft, cruise_speed),
      S::straight(14.0, cruise_speed, 0.0),
  };
  return plan;
}

}  // namespace robnav
