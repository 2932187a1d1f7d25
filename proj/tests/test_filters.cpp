#include "robnav/robust_filter.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "linear_model.hpp"
#include "robnav/errors.hpp"
#include "robnav/experiment.hpp"
#include "robnav/nav_model.hpp"
#include "test_helpers.hpp"

using namespace robnav;
using test_helpers::KalmanOracle;
using test_helpers::LinearModel;
using test_helpers::random_spd;

namespace {

/// A short noisy hover input stream for driving the navigation model.
struct HoverStream {
  explicit HoverStream(std::uint64_t seed) : rng(seed), randn(0.0, 1.0) {}

  Eigen::VectorXd input() {
    Eigen::VectorXd u(6);
    u << 1e-3 * randn(rng), 1e-3 * randn(rng), 1e-3 * randn(rng), 5e-3 * randn(rng),
        5e-3 * randn(rng), -9.81 + 5e-3 * randn(rng);
    return u;
  }

  Eigen::VectorXd measurement(const Eigen::Vector3d& p) {
    Eigen::VectorXd y(6);
    y << p(0) + 0.7 * randn(rng), p(1) + 0.7 * randn(rng), p(2) + 0.8 * randn(rng),
        0.35 * randn(rng), 0.35 * randn(rng), 0.4 * randn(rng);
    return y;
  }

  std::mt19937_64 rng;
  std::normal_distribution<double> randn;
};

GaussianBelief nav_hover_belief() {
  GaussianBelief b;
  b.x_hat = ExperimentConfig::default_init_state();
  b.V = 1e-3 * Eigen::MatrixXd::Identity(16, 16);
  return b;
}

}  // namespace

TEST_CASE("gamma is zero at theta zero and matches the scalar closed form") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    CHECK(gamma(random_spd(rng, 8), 0.0) == 0.0);
  }

  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  // 0.5 * (ln 0.5 + 1/0.5 - 1)
  CHECK(gamma(one, 0.5) == doctest::Approx(0.153426).epsilon(1e-5));
  CHECK(gamma(one, 0.5) == doctest::Approx(0.5 * (std::log(0.5) + 1.0)).epsilon(1e-14));
}

TEST_CASE("gamma scaling law: gamma(aP, t) == gamma(P, at)") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> alpha_dist(0.2, 5.0);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXd P = random_spd(rng, 6);
    const double alpha = alpha_dist(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    const double theta = 0.5 / (alpha * es.eigenvalues().maxCoeff());
    CHECK(gamma(alpha * P, theta) ==
          doctest::Approx(gamma(P, alpha * theta)).epsilon(1e-11));
  }
}

TEST_CASE("gamma rejects arguments outside its domain") {
  std::mt19937_64 rng(33);
  const Eigen::MatrixXd P = random_spd(rng, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
  const double lambda_max = es.eigenvalues().maxCoeff();

  CHECK_THROWS_AS(gamma(P, -1e-3), std::domain_error);
  CHECK_THROWS_AS(gamma(P, 1.0 / lambda_max), std::domain_error);

  Eigen::MatrixXd indefinite = P;
  indefinite(0, 0) = -5.0;
  CHECK_THROWS_AS(gamma(indefinite, 0.0), std::invalid_argument);
}

TEST_CASE("gamma is strictly increasing in theta") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 10; ++i) {
    const Eigen::MatrixXd P = random_spd(rng, 8);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    const double hi = 0.999 / es.eigenvalues().maxCoeff();
    double prev = gamma(P, 0.0);
    for (int j = 1; j <= 50; ++j) {
      const double g = gamma(P, hi * j / 50.0);
      CHECK(g > prev);
      prev = g;
    }
  }
}

TEST_CASE("solve_theta inverts the scalar gamma example") {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  FilterConfig cfg;
  CHECK(solve_theta(one, 0.153426, cfg) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("solve_theta certificates on random problems") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> c_dist(2e-4, 1.0);
  FilterConfig cfg;
  for (int i = 0; i < 50; ++i) {
    const Eigen::MatrixXd P = random_spd(rng, 16);
    const double c = c_dist(rng);
    const double theta = solve_theta(P, c, cfg);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    CHECK(theta > 0.0);
    CHECK(theta < 1.0 / es.eigenvalues().maxCoeff());
    CHECK(std::abs(gamma(P, theta) - c) <= cfg.bisection_tol);
  }
}

TEST_CASE("solve_theta scaling: theta(aP, c) == theta(P, c) / a") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> alpha_dist(0.25, 4.0);
  FilterConfig cfg;
  for (int i = 0; i < 10; ++i) {
    const Eigen::MatrixXd P = random_spd(rng, 8);
    const double alpha = alpha_dist(rng);
    const double t1 = solve_theta(P, 0.3, cfg);
    const double t2 = solve_theta(alpha * P, 0.3, cfg);
    CHECK(t2 == doctest::Approx(t1 / alpha).epsilon(1e-6));
  }
}

TEST_CASE("solve_theta stays continuous at vanishing tolerance") {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  FilterConfig cfg;
  const double theta = solve_theta(one, 1e-12, cfg);
  // gamma(theta) ~ theta^2/4 for small theta, so the root is near 2e-6.
  CHECK(theta == doctest::Approx(2e-6).epsilon(0.05));
  CHECK(theta < 1e-5);
}

TEST_CASE("solve_theta rejects bad inputs and reports non-convergence") {
  FilterConfig cfg;
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(solve_theta(bad, 0.1, cfg), std::invalid_argument);

  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  CHECK_THROWS_AS(solve_theta(one, 0.0, cfg), std::invalid_argument);

  FilterConfig strangled = cfg;
  strangled.bisection_max_iter = 3;
  CHECK_THROWS_AS(solve_theta(one, 0.3, strangled), NumericalError);
}

TEST_CASE("ekf matches the textbook Kalman oracle on a 2-state system") {
  Eigen::MatrixXd A(2, 2), C(1, 2), Q(2, 2), R(1, 1);
  A << 1.0, 0.1, 0.0, 0.97;
  C << 1.0, 0.0;
  Q << 2e-3, 1e-4, 1e-4, 3e-3;
  R << 0.4;
  const LinearModel model(A, C, Q, R);

  Eigen::VectorXd x0(2);
  x0 << 0.5, -0.2;
  const Eigen::MatrixXd P0 = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  GaussianBelief belief{x0, P0};
  KalmanOracle oracle(A, C, Q, R, x0, P0);

  std::mt19937_64 rng(37);
  std::normal_distribution<double> randn(0.0, 1.0);
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(1);
  for (int k = 0; k < 500; ++k) {
    Eigen::VectorXd y(1);
    y << std::sin(0.05 * k) + 0.3 * randn(rng);
    const StepResult res = ekf_step(belief, u0, y, model);
    belief = res.next;
    oracle.step(y);

    const double dx = (belief.x_hat - oracle.prediction()).norm() /
                      std::max(1.0, oracle.prediction().norm());
    const double dP = (belief.V - oracle.covariance()).norm() /
                      std::max(1.0, oracle.covariance().norm());
    CHECK(dx <= 1e-10);
    CHECK(dP <= 1e-10);
  }
}

TEST_CASE("ekf converges to the scalar Riccati fixed point") {
  const double a = 0.95, q = 0.1, r = 0.5;
  Eigen::MatrixXd A(1, 1), C(1, 1), Q(1, 1), R(1, 1);
  A << a;
  C << 1.0;
  Q << q;
  R << r;
  const LinearModel model(A, C, Q, R);

  // Stationary predictor covariance: P = a^2 P r / (P + r) + q, the positive
  // root of P^2 + P (r - a^2 r - q) - q r = 0.
  const double b = r - a * a * r - q;
  const double p_star = 0.5 * (-b + std::sqrt(b * b + 4.0 * q * r));

  GaussianBelief belief{Eigen::VectorXd::Ones(1), 2.0 * Eigen::MatrixXd::Identity(1, 1)};
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(1);
  for (int k = 0; k < 500; ++k) {
    belief = ekf_step(belief, u0, Eigen::VectorXd::Zero(1), model).next;
  }
  CHECK(belief.V(0, 0) == doctest::Approx(p_star).epsilon(1e-9));
}

TEST_CASE("zero innovation leaves the filtered state at the prediction") {
  const NavSystemModel model{NoiseConfig{}};
  GaussianBelief belief = nav_hover_belief();
  const Eigen::VectorXd y = model.measurement_matrix() * belief.x_hat;
  Eigen::VectorXd u(6);
  u << 0.0, 0.0, 0.0, 0.0, 0.0, -9.81;

  const StepResult res = ekf_step(belief, u, y, model);
  CHECK((res.filtered - belief.x_hat).norm() < 1e-14);
}

TEST_CASE("rekf with zero tolerance is bit identical to the ekf") {
  const NavSystemModel model{NoiseConfig{}};
  FilterConfig zero_cfg;
  zero_cfg.tolerance = 0.0;

  GaussianBelief a = nav_hover_belief();
  GaussianBelief b = nav_hover_belief();
  HoverStream stream(38);
  for (int k = 0; k < 100; ++k) {
    const Eigen::VectorXd u = stream.input();
    const Eigen::VectorXd y = stream.measurement(a.x_hat.segment<3>(StateIndex::kPos));
    const StepResult ra = rekf_step(a, u, y, model, zero_cfg);
    const StepResult rb = ekf_step(b, u, y, model);
    CHECK((ra.next.x_hat - rb.next.x_hat).norm() == 0.0);
    CHECK((ra.next.V - rb.next.V).norm() == 0.0);
    a = ra.next;
    b = rb.next;
  }
}

TEST_CASE("positive tolerance inflates the predictor covariance") {
  const NavSystemModel model{NoiseConfig{}};
  FilterConfig cfg;
  cfg.tolerance = 0.5;

  GaussianBelief belief = nav_hover_belief();
  HoverStream stream(39);
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXd u = stream.input();
    const Eigen::VectorXd y = stream.measurement(belief.x_hat.segment<3>(StateIndex::kPos));
    const StepResult res = rekf_step(belief, u, y, model, cfg);
    REQUIRE(res.robust_applied);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(res.next.V - res.p_nominal,
                                                      Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK((res.next.V - res.next.V.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    belief = res.next;
  }
}

TEST_CASE("rekf falls back to the nominal covariance when bisection is strangled") {
  const NavSystemModel model{NoiseConfig{}};
  FilterConfig cfg;
  cfg.tolerance = 0.5;
  cfg.bisection_max_iter = 2;

  GaussianBelief belief = nav_hover_belief();
  HoverStream stream(40);
  const Eigen::VectorXd u = stream.input();
  const Eigen::VectorXd y = stream.measurement(belief.x_hat.segment<3>(StateIndex::kPos));
  const StepResult res = rekf_step(belief, u, y, model, cfg);
  CHECK_FALSE(res.robust_applied);
  CHECK(res.theta == 0.0);
  CHECK((res.next.V - res.p_nominal).norm() == 0.0);
}

TEST_CASE("RobustEkf annotates numerical failures with the step index") {
  const NavSystemModel model{NoiseConfig{}};
  GaussianBelief init = nav_hover_belief();
  init.V = -Eigen::MatrixXd::Identity(16, 16);  // not a covariance
  RobustEkf filter(model, FilterConfig{}, init);

  Eigen::VectorXd u(6), y(6);
  u << 0.0, 0.0, 0.0, 0.0, 0.0, -9.81;
  y.setZero();
  try {
    filter.step(u, y);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("step 0") != std::string::npos);
  }
}
