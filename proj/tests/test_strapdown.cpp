#include "robnav/strapdown.hpp"

#include <random>

#include "doctest.h"
#include "robnav/quaternion.hpp"
#include "test_helpers.hpp"

using namespace robnav;
using test_helpers::random_imu;
using test_helpers::random_state;
using test_helpers::random_vec3;

using test_helpers::fd_jacobian_noise;
using test_helpers::fd_jacobian_state;

namespace {

/// Independent reference: integrates the continuous kinematics with n_sub
/// explicit Euler substeps over one sampling interval.
NavState euler_substep_reference(const NavState& x, const ImuSample& u, const NoiseConfig& cfg,
                                 int n_sub = 100) {
  const double h = cfg.delta / n_sub;
  const Eigen::Vector3d omega = u.omega_m - x.delta_omega_b / cfg.delta;
  const Eigen::Vector3d accel_body = u.a_m - x.delta_a_b / cfg.delta;

  Eigen::Vector4d q = x.q;
  Eigen::Vector3d v = x.v;
  Eigen::Vector3d p = x.p;
  for (int i = 0; i < n_sub; ++i) {
    Eigen::Vector4d omega_pure;
    omega_pure << 0.0, omega;
    const Eigen::Vector4d q_dot = 0.5 * quat_mul(q, omega_pure);
    const Eigen::Vector3d v_dot = cfg.g_n + quat_to_rotation(q) * accel_body;
    const Eigen::Vector3d p_dot = v;
    q += h * q_dot;
    v += h * v_dot;
    p += h * p_dot;
  }

  NavState out = x;
  out.q = q / q.norm();
  out.v = v;
  out.p = p;
  return out;
}

}  // namespace

TEST_CASE("NavState flattens and re-parses exactly") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const NavState x = random_state(rng);
    const NavState back = NavState::from_vector(x.to_vector());
    CHECK((back.to_vector() - x.to_vector()).norm() == 0.0);
  }
}

TEST_CASE("propagate holds a hover in equilibrium") {
  NoiseConfig cfg;
  NavState x;
  x.p = Eigen::Vector3d(3.0, -2.0, -20.0);
  ImuSample u;
  u.a_m = Eigen::Vector3d(0.0, 0.0, -9.81);

  const NavState next = propagate(x, u, Vector6d::Zero(), cfg);
  CHECK((next.q - x.q).norm() < 1e-15);
  CHECK(next.v.norm() < 1e-14);
  CHECK((next.p - x.p).norm() == 0.0);
  CHECK((next.delta_omega_b - x.delta_omega_b).norm() == 0.0);
  CHECK((next.delta_a_b - x.delta_a_b).norm() == 0.0);
}

TEST_CASE("propagate integrates position from velocity") {
  NoiseConfig cfg;
  cfg.g_n.setZero();
  NavState x;
  x.v = Eigen::Vector3d(1.0, 0.0, 0.0);
  const NavState next = propagate(x, ImuSample{}, Vector6d::Zero(), cfg);
  CHECK((next.p - Eigen::Vector3d(0.02, 0.0, 0.0)).norm() < 1e-16);
  CHECK((next.v - x.v).norm() == 0.0);
}

TEST_CASE("propagate rejects non-finite inputs") {
  NoiseConfig cfg;
  NavState x;
  ImuSample u;
  u.a_m(1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(propagate(x, u, Vector6d::Zero(), cfg), std::invalid_argument);
}

TEST_CASE("propagate agrees with a fine-substep integration of the continuous model") {
  NoiseConfig cfg;
  std::mt19937_64 rng(22);
  for (int i = 0; i < 10; ++i) {
    const NavState x = random_state(rng);
    const ImuSample u = random_imu(rng);

    const NavState coarse = propagate(x, u, Vector6d::Zero(), cfg);
    const NavState fine = euler_substep_reference(x, u, cfg);
    const double err = (coarse.to_vector() - fine.to_vector()).cwiseAbs().maxCoeff();
    CHECK(err < 25.0 * cfg.delta * cfg.delta);

    // The disagreement must shrink like delta squared.
    NoiseConfig half = cfg;
    half.delta = cfg.delta / 2.0;
    NavState x_half = x;
    x_half.delta_omega_b = x.delta_omega_b / 2.0;  // increment biases scale with delta
    x_half.delta_a_b = x.delta_a_b / 2.0;
    const double err_half = (propagate(x_half, u, Vector6d::Zero(), half).to_vector() -
                             euler_substep_reference(x_half, u, half).to_vector())
                                .cwiseAbs()
                                .maxCoeff();
    CHECK(err_half < 0.4 * err + 1e-12);
  }
}

TEST_CASE("propagate is frame consistent for the velocity and position sub-state") {
  NoiseConfig cfg;
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    NavState x = random_state(rng);
    const ImuSample u = random_imu(rng);
    const Eigen::Matrix3d R = quat_to_rotation(x.q);

    NavState x_id = x;
    x_id.q = Eigen::Vector4d(1.0, 0.0, 0.0, 0.0);
    x_id.delta_a_b = R * x.delta_a_b;
    ImuSample u_rot = u;
    u_rot.a_m = R * u.a_m;

    const NavState a = propagate(x, u, Vector6d::Zero(), cfg);
    const NavState b = propagate(x_id, u_rot, Vector6d::Zero(), cfg);
    CHECK((a.v - b.v).norm() < 1e-12);
    CHECK((a.p - b.p).norm() < 1e-12);
  }
}

TEST_CASE("quaternion norm stays within 1e-9 over ten thousand random steps") {
  NoiseConfig cfg;
  std::mt19937_64 rng(24);
  NavState x = random_state(rng);
  std::normal_distribution<double> randn(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    ImuSample u = random_imu(rng);
    Vector6d eps;
    for (int j = 0; j < 6; ++j) {
      eps(j) = randn(rng);
    }
    x = propagate(x, u, eps, cfg);
    CHECK(std::abs(x.q.norm() - 1.0) <= 1e-9);
    // keep velocity and position bounded over the long run
    x.v *= 0.99;
    x.p *= 0.99;
  }
}

TEST_CASE("jacobian_state fixed blocks") {
  NoiseConfig cfg;
  NavState x;
  const Matrix16d A = jacobian_state(x, ImuSample{}, cfg);

  CHECK((A.block<3, 3>(StateIndex::kPos, StateIndex::kVel) -
         cfg.delta * Eigen::Matrix3d::Identity())
            .norm() == 0.0);
  CHECK((A.block<6, 6>(StateIndex::kGyroBias, StateIndex::kGyroBias) -
         Eigen::Matrix<double, 6, 6>::Identity())
            .norm() == 0.0);
}

TEST_CASE("jacobian_state matches central finite differences") {
  NoiseConfig cfg;
  std::mt19937_64 rng(25);
  for (int i = 0; i < 25; ++i) {
    const NavState x = random_state(rng);
    const ImuSample u = random_imu(rng);
    const Matrix16d analytic = jacobian_state(x, u, cfg);
    const Matrix16d fd = fd_jacobian_state(x, u, cfg);
    CHECK(test_helpers::max_rel_err(analytic, fd) <= 1e-5);
  }
}

TEST_CASE("jacobian_noise structure and finite differences") {
  NoiseConfig cfg;
  std::mt19937_64 rng(26);
  for (int i = 0; i < 25; ++i) {
    const NavState x = random_state(rng);
    const ImuSample u = random_imu(rng);
    const Matrix16x6d G = jacobian_noise(x, u, cfg);

    CHECK((G.block<3, 3>(StateIndex::kVel, 3) - cfg.delta * quat_to_rotation(x.q)).norm() <
          1e-14);
    CHECK(G.block<3, 6>(StateIndex::kPos, 0).norm() == 0.0);
    CHECK(G.block<6, 6>(StateIndex::kGyroBias, 0).norm() == 0.0);
    CHECK(G.block<3, 3>(StateIndex::kVel, 0).norm() == 0.0);

    CHECK(test_helpers::max_rel_err(G, fd_jacobian_noise(x, u, cfg)) <= 1e-5);
  }
}

TEST_CASE("build_covariances block values") {
  NoiseConfig cfg;
  const ModelCovariances m = build_covariances(cfg);

  CHECK(m.Q_tilde(0, 0) == 1e-10);
  const Vector6d expected_r =
      (Vector6d() << 1.96, 1.96, 2.56, 0.1225, 0.1225, 0.16).finished();
  CHECK((m.R.diagonal() - expected_r).norm() == 0.0);
  CHECK((m.R - Matrix6d(expected_r.asDiagonal())).norm() == 0.0);

  // C selects position then velocity, one unit entry per row.
  Eigen::VectorXd x(16);
  x.setLinSpaced(16, 0.0, 15.0);
  Vector6d y = m.C * x;
  CHECK(y(0) == 7.0);
  CHECK(y(2) == 9.0);
  CHECK(y(3) == 4.0);
  CHECK(y(5) == 6.0);
  for (int i = 0; i < 6; ++i) {
    CHECK(m.C.row(i).cwiseAbs().sum() == 1.0);
    CHECK(m.C.row(i).maxCoeff() == 1.0);
  }
}

TEST_CASE("build_covariances with unit config") {
  NoiseConfig cfg;
  cfg.sigma2_omega = 1.0;
  cfg.sigma2_v = 1.0;
  cfg.delta = 1.0;
  const ModelCovariances m = build_covariances(cfg);
  CHECK((m.Q_eps - Matrix6d::Identity()).norm() == 0.0);
}

TEST_CASE("covariance builders return symmetric matrices floored by kappa") {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> uni(0.1, 10.0);
  for (int i = 0; i < 10; ++i) {
    NoiseConfig cfg;
    cfg.sigma2_omega = uni(rng);
    cfg.sigma2_v = uni(rng);
    cfg.sigma2_q = uni(rng) * 1e-6;
    cfg.sigma2_p = uni(rng) * 1e-4;
    const ModelCovariances m = build_covariances(cfg);

    CHECK((m.Q_eps - m.Q_eps.transpose()).norm() == 0.0);
    CHECK((m.Q_tilde - m.Q_tilde.transpose()).norm() == 0.0);
    CHECK((m.R - m.R.transpose()).norm() == 0.0);

    Eigen::SelfAdjointEigenSolver<Matrix16d> es(m.Q_tilde);
    CHECK(es.eigenvalues().minCoeff() >= cfg.kappa * (1.0 - 1e-12));
  }
}

TEST_CASE("NoiseConfig validation") {
  NoiseConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.delta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NoiseConfig{};
  cfg.r(2) = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
