#include "robnav/simulator.hpp"

#include <cmath>
#include <random>

#include "robnav/quaternion.hpp"

namespace robnav {

namespace {

Eigen::Vector4d yaw_quaternion(double psi) {
  return {std::cos(0.5 * psi), 0.0, 0.0, std::sin(0.5 * psi)};
}

}  // namespace

FlightLog simulate_flight(const TrajectoryPlan& plan, const NoiseConfig& cfg,
                          const SensorModel& sensors, std::optional<std::uint64_t> seed) {
  plan.validate();
  cfg.validate();

  const double duration = plan.duration();
  const double dt = cfg.delta;
  const auto n_imu = static_cast<std::size_t>(std::llround(duration / dt)) + 1;
  const auto fix_decim = static_cast<std::size_t>(std::llround(1.0 / (dt * sensors.fix_rate)));

  std::mt19937_64 rng(seed.value_or(plan.seed));
  std::normal_distribution<double> randn(0.0, 1.0);
  auto noise3 = [&](double std_dev) -> Eigen::Vector3d {
    Eigen::Vector3d n(randn(rng), randn(rng), randn(rng));
    return (sensors.noise_scale * std_dev) * n;
  };

  const double gyro_std = std::sqrt(dt * cfg.sigma2_omega);
  const double accel_std = std::sqrt(dt * cfg.sigma2_v);

  FlightLog log;
  log.imu.reserve(n_imu);
  log.truth.reserve(n_imu);

  for (std::size_t k = 0; k < n_imu; ++k) {
    const double t = static_cast<double>(k) * dt;
    const KinematicSample kin = plan_kinematics(plan, t);
    const Eigen::Vector4d q = yaw_quaternion(kin.heading);

    TruthSample truth;
    truth.t = t;
    truth.q = q;
    truth.v = kin.v;
    truth.p = kin.p;
    log.truth.push_back(truth);

    // Exact inverse kinematics: yaw-only attitude means the body rate is the
    // heading rate about the down axis, and the specific force is R'(a - g).
    const Eigen::Vector3d omega_true(0.0, 0.0, kin.heading_rate);
    const Eigen::Vector3d specific_force = quat_to_rotation(q).transpose() * (kin.a - cfg.g_n);

    ImuSample imu;
    imu.t = t;
    imu.omega_m = omega_true + sensors.gyro_bias + noise3(gyro_std);
    imu.a_m = specific_force + sensors.accel_bias + noise3(accel_std);
    log.imu.push_back(imu);
  }

  for (std::size_t k = 0; k < n_imu; k += fix_decim) {
    const TruthSample& truth = log.truth[k];
    FixSample fix;
    fix.t = truth.t;
    fix.pos = truth.p + sensors.noise_scale *
                            Eigen::Vector3d(sensors.fix_pos_std(0) * randn(rng),
                                            sensors.fix_pos_std(1) * randn(rng),
                                            sensors.fix_pos_std(2) * randn(rng));
    fix.vel = truth.v + sensors.noise_scale *
                            Eigen::Vector3d(sensors.fix_vel_std(0) * randn(rng),
                                            sensors.fix_vel_std(1) * randn(rng),
                                            sensors.fix_vel_std(2) * randn(rng));
    log.fixes.push_back(fix);
  }
  return log;
}

}  // namespace robnav
