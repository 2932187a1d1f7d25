#include "robnav/quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace robnav {

namespace {
constexpr double kMinQuatNorm = 1e-6;
constexpr double kSmallAngle = 1e-8;
}  // namespace

Eigen::Vector4d quat_mul(const Eigen::Vector4d& q1, const Eigen::Vector4d& q2) {
  const double w1 = q1(0), x1 = q1(1), y1 = q1(2), z1 = q1(3);
  const double w2 = q2(0), x2 = q2(1), y2 = q2(2), z2 = q2(3);
  return {w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
          w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
          w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
          w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2};
}

Eigen::Vector4d quat_conjugate(const Eigen::Vector4d& q) {
  return {q(0), -q(1), -q(2), -q(3)};
}

Eigen::Vector4d quat_normalize(const Eigen::Vector4d& q) {
  const double n = q.norm();
  if (n < kMinQuatNorm) {
    throw std::invalid_argument("quat_normalize: quaternion norm below 1e-6");
  }
  return q / n;
}

Eigen::Vector4d quat_exp(const Eigen::Vector3d& delta_theta) {
  const double angle = delta_theta.norm();
  Eigen::Vector4d q;
  q(0) = std::cos(0.5 * angle);
  // sin(a/2)/a, series below the small-angle threshold to avoid 0/0.
  const double s = (angle < kSmallAngle) ? 0.5 - angle * angle / 48.0
                                         : std::sin(0.5 * angle) / angle;
  q.tail<3>() = s * delta_theta;
  return q;
}

Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& q_in) {
  const Eigen::Vector4d q = quat_normalize(q_in);
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Eigen::Matrix3d R;
  R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return R;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& x) {
  Eigen::Matrix3d S;
  S << 0.0, -x(2), x(1),
      x(2), 0.0, -x(0),
      -x(1), x(0), 0.0;
  return S;
}

Eigen::Matrix4d quat_left_matrix(const Eigen::Vector4d& q) {
  Eigen::Matrix4d L;
  L << q(0), -q(1), -q(2), -q(3),
      q(1), q(0), -q(3), q(2),
      q(2), q(3), q(0), -q(1),
      q(3), -q(2), q(1), q(0);
  return L;
}

Eigen::Matrix4d quat_right_matrix(const Eigen::Vector4d& r) {
  Eigen::Matrix4d R;
  R << r(0), -r(1), -r(2), -r(3),
      r(1), r(0), r(3), -r(2),
      r(2), -r(3), r(0), r(1),
      r(3), r(2), -r(1), r(0);
  return R;
}

Eigen::Matrix<double, 4, 3> quat_exp_jacobian(const Eigen::Vector3d& delta_theta) {
  const double angle = delta_theta.norm();
  Eigen::Matrix<double, 4, 3> J;
  // Below the switch point both s = sin(a/2)/a and its derivative are
  // evaluated by series; the closed forms cancel catastrophically near zero.
  if (angle < 1e-4) {
    const double a2 = angle * angle;
    J.row(0) = -0.25 * (1.0 - a2 / 24.0) * delta_theta.transpose();
    J.bottomRows<3>() =
        (0.5 - a2 / 48.0) * Eigen::Matrix3d::Identity() +
        (-1.0 / 24.0 + a2 / 960.0) * (delta_theta * delta_theta.transpose());
  } else {
    const Eigen::Vector3d u = delta_theta / angle;
    const double half = 0.5 * angle;
    const double s = std::sin(half) / angle;
    const double ds = 0.5 * std::cos(half) / angle - std::sin(half) / (angle * angle);
    J.row(0) = -0.5 * std::sin(half) * u.transpose();
    J.bottomRows<3>() = s * Eigen::Matrix3d::Identity() +
                        ds * angle * (u * u.transpose());
  }
  return J;
}

Eigen::Matrix4d quat_normalize_jacobian(const Eigen::Vector4d& q) {
  const double n = q.norm();
  if (n < kMinQuatNorm) {
    throw std::invalid_argument("quat_normalize_jacobian: quaternion norm below 1e-6");
  }
  const Eigen::Vector4d u = q / n;
  return (Eigen::Matrix4d::Identity() - u * u.transpose()) / n;
}

Eigen::Matrix<double, 3, 4> rotate_vector_jacobian(const Eigen::Vector4d& q_in,
                                                   const Eigen::Vector3d& t) {
  const Eigen::Vector4d q = quat_normalize(q_in);
  const double w = q(0);
  const Eigen::Vector3d qv = q.tail<3>();

  // d(R(q)t)/dq on the unit sphere, then chained through q -> q/||q||.
  Eigen::Matrix<double, 3, 4> D;
  D.col(0) = 2.0 * (w * t + qv.cross(t));
  D.rightCols<3>() = 2.0 * (qv.dot(t) * Eigen::Matrix3d::Identity() +
                            qv * t.transpose() - t * qv.transpose() - w * skew(t));
  return D * quat_normalize_jacobian(q_in);
}

}  // namespace robnav
