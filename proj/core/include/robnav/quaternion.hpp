/// @file quaternion.hpp Scalar-first Hamilton quaternion algebra and small helpers.

#pragma once

#include <Eigen/Dense>

namespace robnav {

/// Hamilton product q1 * q2 (scalar-first). Inputs need not be unit norm.
Eigen::Vector4d quat_mul(const Eigen::Vector4d& q1, const Eigen::Vector4d& q2);

/// Conjugate [q0, -q1, -q2, -q3]; equals the inverse for unit quaternions.
Eigen::Vector4d quat_conjugate(const Eigen::Vector4d& q);

/// q / ||q||. Throws std::invalid_argument when ||q|| < 1e-6.
Eigen::Vector4d quat_normalize(const Eigen::Vector4d& q);

/// Unit quaternion encoding a rotation by the vector delta_theta (axis times
/// angle, radians): [cos(||dt||/2), sin(||dt||/2) dt/||dt||]. Switches to a
/// two-term series of sin(x/2)/x below ||dt|| = 1e-8.
Eigen::Vector4d quat_exp(const Eigen::Vector3d& delta_theta);

/// Body-to-NED rotation matrix of a quaternion (renormalized internally).
/// Throws std::invalid_argument when ||q|| < 1e-6.
Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& q);

/// Skew-symmetric matrix with skew(x) * y == x.cross(y).
Eigen::Matrix3d skew(const Eigen::Vector3d& x);

/// 4x4 matrix L with quat_mul(q, r) == L(q) * r.
Eigen::Matrix4d quat_left_matrix(const Eigen::Vector4d& q);

/// 4x4 matrix R with quat_mul(q, r) == R(r) * q.
Eigen::Matrix4d quat_right_matrix(const Eigen::Vector4d& r);

/// 4x3 derivative of quat_exp with respect to its rotation-vector argument.
Eigen::Matrix<double, 4, 3> quat_exp_jacobian(const Eigen::Vector3d& delta_theta);

/// 4x4 derivative of q / ||q|| with respect to q.
Eigen::Matrix4d quat_normalize_jacobian(const Eigen::Vector4d& q);

/// 3x4 derivative of quat_to_rotation(q) * t with respect to q, including the
/// internal renormalization of q.
Eigen::Matrix<double, 3, 4> rotate_vector_jacobian(const Eigen::Vector4d& q,
                                                   const Eigen::Vector3d& t);

}  // namespace robnav
