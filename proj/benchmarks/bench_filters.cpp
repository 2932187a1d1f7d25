#include <benchmark/benchmark.h>

#include <random>

#include "robnav/experiment.hpp"
#include "robnav/nav_model.hpp"
#include "robnav/robust_filter.hpp"

namespace {

Eigen::MatrixXd random_spd(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> randn(0.0, 1.0);
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      M(i, j) = randn(rng);
    }
  }
  return M * M.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

robnav::GaussianBelief nav_belief() {
  robnav::GaussianBelief b;
  b.x_hat = robnav::ExperimentConfig::default_init_state();
  b.V = 1e-3 * Eigen::MatrixXd::Identity(16, 16);
  return b;
}

Eigen::VectorXd hover_input() {
  Eigen::VectorXd u(6);
  u << 0.0, 0.0, 0.0, 0.0, 0.0, -9.81;
  return u;
}

void BM_SolveTheta(benchmark::State& state) {
  const Eigen::MatrixXd P = random_spd(16, 7);
  robnav::FilterConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(robnav::solve_theta(P, 0.5, cfg));
  }
}
BENCHMARK(BM_SolveTheta);

void BM_EkfStep(benchmark::State& state) {
  const robnav::NavSystemModel model{robnav::NoiseConfig{}};
  robnav::FilterConfig cfg;
  robnav::GaussianBelief belief = nav_belief();
  const Eigen::VectorXd u = hover_input();
  Eigen::VectorXd y(6);
  y << belief.x_hat.segment<3>(robnav::StateIndex::kPos), Eigen::Vector3d::Zero();
  for (auto _ : state) {
    belief = robnav::rekf_step(belief, u, y, model, cfg).next;
  }
}
BENCHMARK(BM_EkfStep);

void BM_RekfStep(benchmark::State& state) {
  const robnav::NavSystemModel model{robnav::NoiseConfig{}};
  robnav::FilterConfig cfg;
  cfg.tolerance = 0.1;
  robnav::GaussianBelief belief = nav_belief();
  const Eigen::VectorXd u = hover_input();
  Eigen::VectorXd y(6);
  y << belief.x_hat.segment<3>(robnav::StateIndex::kPos), Eigen::Vector3d::Zero();
  for (auto _ : state) {
    belief = robnav::rekf_step(belief, u, y, model, cfg).next;
  }
}
BENCHMARK(BM_RekfStep);

}  // namespace
