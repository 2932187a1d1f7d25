#include "robnav/robust_filter.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "robnav/errors.hpp"

namespace robnav {

namespace {

Eigen::VectorXd spd_eigenvalues(const Eigen::MatrixXd& P) {
  if (P.rows() != P.cols()) {
    throw std::invalid_argument("gamma: P must be square");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("gamma: eigenvalue computation failed");
  }
  const Eigen::VectorXd evals = es.eigenvalues();
  if (evals.minCoeff() <= 0.0) {
    throw std::invalid_argument("gamma: P is not positive definite");
  }
  return evals;
}

/// Inverse of an SPD matrix via Cholesky; `what` names the matrix in errors.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& M, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(std::string("covariance inversion failed (non-SPD): ") + what);
  }
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(M.rows(), M.cols()));
  return 0.5 * (inv + inv.transpose());
}

}  // namespace

double gamma_from_spectrum(const Eigen::VectorXd& eigenvalues, double theta) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double a = theta * eigenvalues(i);
    acc += std::log1p(-a) + 1.0 / (1.0 - a) - 1.0;
  }
  return 0.5 * acc;
}

double gamma(const Eigen::MatrixXd& P, double theta) {
  const Eigen::VectorXd evals = spd_eigenvalues(P);
  if (theta < 0.0 || theta * evals.maxCoeff() >= 1.0) {
    throw std::domain_error("gamma: theta outside [0, 1/lambda_max(P))");
  }
  return gamma_from_spectrum(evals, theta);
}

double solve_theta(const Eigen::MatrixXd& P, double c, const FilterConfig& cfg) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("solve_theta: tolerance must be positive");
  }
  const Eigen::VectorXd evals = spd_eigenvalues(P);
  const double lambda_max = evals.maxCoeff();

  double lo = 0.0;
  double hi = (1.0 - cfg.theta_margin) / lambda_max;
  if (gamma_from_spectrum(evals, hi) < c) {
    throw std::invalid_argument("solve_theta: tolerance beyond the searchable range");
  }

  // For tolerances far below bisection_tol the fixed residual target would
  // accept theta = 0; scale the target with c, floored at the evaluation
  // noise of the eigenvalue sum.
  const double eval_noise =
      32.0 * static_cast<double>(evals.size()) * std::numeric_limits<double>::epsilon();
  const double target = std::min(cfg.bisection_tol, std::max(0.1 * c, eval_noise));

  double residual = -c;  // gamma(0) - c
  for (int iter = 0; iter < cfg.bisection_max_iter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) {
      break;  // interval exhausted at machine precision
    }
    const double g = gamma_from_spectrum(evals, mid);
    residual = g - c;
    if (std::abs(residual) <= target) {
      return mid;
    }
    if (g < c) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  std::ostringstream msg;
  msg << "solve_theta: bisection did not reach tolerance " << cfg.bisection_tol
      << " within " << cfg.bisection_max_iter << " iterations (residual " << residual
      << ")";
  throw NumericalError(msg.str());
}

StepResult rekf_step(const GaussianBelief& belief, const Eigen::VectorXd& u,
                     const Eigen::VectorXd& y, const StateSpaceModel& model,
                     const FilterConfig& cfg) {
  const int n = model.state_dim();
  const Eigen::MatrixXd& C = model.measurement_matrix();
  const Eigen::MatrixXd& R = model.measurement_noise_cov();
  const Eigen::MatrixXd& V = belief.V;

  // Gain and measurement update.
  const Eigen::MatrixXd S = C * V * C.transpose() + R;
  Eigen::LLT<Eigen::MatrixXd> s_llt(S);
  if (s_llt.info() != Eigen::Success) {
    throw NumericalError("covariance inversion failed (non-SPD): innovation covariance");
  }
  const Eigen::MatrixXd L = (s_llt.solve(C * V)).transpose();

  StepResult out;
  out.filtered = belief.x_hat + L * (y - C * belief.x_hat);
  model.fixup_state(out.filtered);

  // Time update around the filtered state.
  out.next.x_hat = model.propagate_mean(out.filtered, u);
  Eigen::MatrixXd A, G;
  model.linearize(out.filtered, u, A, G);

  // Information-form posterior covariance, as in the recursion definition.
  const Eigen::MatrixXd V_inv = spd_inverse(V, "predictor covariance");
  const Eigen::MatrixXd info = V_inv + C.transpose() * spd_inverse(R, "measurement noise") * C;
  const Eigen::MatrixXd posterior = spd_inverse(info, "posterior information");

  Eigen::MatrixXd P = A * posterior * A.transpose() + model.additive_noise_cov() +
                      G * model.process_noise_cov() * G.transpose();
  P = 0.5 * (P + P.transpose());
  out.p_nominal = P;

  if (cfg.tolerance > 0.0) {
    try {
      out.theta = solve_theta(P, cfg.tolerance, cfg);
      const Eigen::MatrixXd precision =
          spd_inverse(P, "nominal predictor covariance") -
          out.theta * Eigen::MatrixXd::Identity(n, n);
      out.next.V = spd_inverse(precision, "inflated precision");
      out.robust_applied = true;
    } catch (const NumericalError& e) {
      std::cerr << "rekf_step: " << e.what() << "; using the nominal covariance for this step\n";
      out.next.V = P;
      out.theta = 0.0;
      out.robust_applied = false;
    }
  } else {
    out.next.V = P;
  }
  return out;
}

StepResult ekf_step(const GaussianBelief& belief, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& y, const StateSpaceModel& model) {
  FilterConfig cfg;
  cfg.tolerance = 0.0;
  return rekf_step(belief, u, y, model, cfg);
}

RobustEkf::RobustEkf(const StateSpaceModel& model, const FilterConfig& cfg,
                     GaussianBelief init)
    : model_(&model), cfg_(cfg), belief_(std::move(init)) {
  if (belief_.x_hat.size() != model.state_dim()) {
    throw std::invalid_argument("RobustEkf: initial mean has the wrong dimension");
  }
}

StepResult RobustEkf::step(const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  try {
    StepResult res = rekf_step(belief_, u, y, *model_, cfg_);
    belief_ = res.next;
    ++steps_;
    return res;
  } catch (const NumericalError& e) {
    std::ostringstream msg;
    msg << e.what() << " at step " << steps_;
    throw NumericalError(msg.str());
  }
}

}  // namespace robnav
