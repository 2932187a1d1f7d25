// A small linear time-invariant test system behind the StateSpaceModel
// interface, plus an independently coded textbook Kalman filter used as the
// oracle for the EKF path. The oracle deliberately uses the covariance-form
// update (I - KC) P and plain matrix inversion, a different algebraic route
// from the filter under test.

#pragma once

#include <Eigen/Dense>

#include "robnav/state_space_model.hpp"

namespace test_helpers {

class LinearModel final : public robnav::StateSpaceModel {
 public:
  LinearModel(Eigen::MatrixXd A, Eigen::MatrixXd C, Eigen::MatrixXd Q, Eigen::MatrixXd R)
      : A_(std::move(A)),
        C_(std::move(C)),
        Q_(std::move(Q)),
        R_(std::move(R)),
        G_identity_(Eigen::MatrixXd::Identity(A_.rows(), A_.rows())),
        Q_eps_zero_(Eigen::MatrixXd::Zero(A_.rows(), A_.rows())) {}

  int state_dim() const override { return static_cast<int>(A_.rows()); }
  int meas_dim() const override { return static_cast<int>(C_.rows()); }

  Eigen::VectorXd propagate_mean(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& /*u*/) const override {
    return A_ * x;
  }

  void linearize(const Eigen::VectorXd& /*x*/, const Eigen::VectorXd& /*u*/,
                 Eigen::MatrixXd& A, Eigen::MatrixXd& G) const override {
    A = A_;
    G = G_identity_;
  }

  const Eigen::MatrixXd& measurement_matrix() const override { return C_; }
  const Eigen::MatrixXd& measurement_noise_cov() const override { return R_; }
  const Eigen::MatrixXd& process_noise_cov() const override { return Q_eps_zero_; }
  const Eigen::MatrixXd& additive_noise_cov() const override { return Q_; }

 private:
  Eigen::MatrixXd A_, C_, Q_, R_;
  Eigen::MatrixXd G_identity_, Q_eps_zero_;
};

/// Predictor-form textbook Kalman filter: keeps the prediction of x_k and its
/// covariance, updates with y_k, propagates with A.
class KalmanOracle {
 public:
  KalmanOracle(Eigen::MatrixXd A, Eigen::MatrixXd C, Eigen::MatrixXd Q, Eigen::MatrixXd R,
               Eigen::VectorXd x0, Eigen::MatrixXd P0)
      : A_(std::move(A)),
        C_(std::move(C)),
        Q_(std::move(Q)),
        R_(std::move(R)),
        x_(std::move(x0)),
        P_(std::move(P0)) {}

  void step(const Eigen::VectorXd& y) {
    const Eigen::MatrixXd S = C_ * P_ * C_.transpose() + R_;
    const Eigen::MatrixXd K = P_ * C_.transpose() * S.inverse();
    const Eigen::VectorXd x_post = x_ + K * (y - C_ * x_);
    const Eigen::MatrixXd P_post =
        (Eigen::MatrixXd::Identity(P_.rows(), P_.cols()) - K * C_) * P_;
    x_ = A_ * x_post;
    P_ = A_ * P_post * A_.transpose() + Q_;
  }

  const Eigen::VectorXd& prediction() const { return x_; }
  const Eigen::MatrixXd& covariance() const { return P_; }

 private:
  Eigen::MatrixXd A_, C_, Q_, R_;
  Eigen::VectorXd x_;
  Eigen::MatrixXd P_;
};

}  // namespace test_helpers
