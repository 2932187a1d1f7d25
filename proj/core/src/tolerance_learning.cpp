#include "robnav/tolerance_learning.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "robnav/errors.hpp"

namespace robnav {

ToleranceGrid ToleranceGrid::linear(double lo, double hi, int n) {
  if (n < 1 || !(hi > lo) || lo < 0.0) {
    throw std::invalid_argument("ToleranceGrid::linear: need n >= 1 and 0 <= lo < hi");
  }
  ToleranceGrid g;
  g.values.resize(static_cast<std::size_t>(n));
  if (n == 1) {
    g.values[0] = lo;
    return g;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) {
    g.values[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
  }
  g.values.back() = hi;
  return g;
}

void ToleranceGrid::validate() const {
  if (values.empty()) {
    throw std::invalid_argument("ToleranceGrid: empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) {
      throw std::invalid_argument("ToleranceGrid: negative tolerance");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw std::invalid_argument("ToleranceGrid: values must be strictly increasing");
    }
  }
}

PhaseTrajectory run_phase(std::span<const SyncedSample> data, const StateSpaceModel& model,
                          const FilterConfig& cfg, const GaussianBelief& init) {
  PhaseTrajectory traj;
  traj.final_belief = init;
  traj.filtered.reserve(data.size());
  traj.predicted.reserve(data.size());
  traj.predictor_cov.reserve(data.size());
  traj.theta.reserve(data.size());

  RobustEkf filter(model, cfg, init);
  for (const SyncedSample& s : data) {
    traj.predictor_cov.push_back(filter.belief().V);
    Eigen::VectorXd u(6);
    u << s.imu.omega_m, s.imu.a_m;
    const StepResult res = filter.step(u, s.meas.y);
    traj.filtered.push_back(res.filtered);
    traj.predicted.push_back(res.next.x_hat);
    traj.theta.push_back(res.theta);
  }
  traj.final_belief = filter.belief();
  return traj;
}

LearnReport learn_tolerance(std::span<const SyncedSample> data, const ToleranceGrid& grid,
                            const GaussianBelief& init, const StateSpaceModel& model,
                            const FilterConfig& base_cfg, double a_priori_c,
                            PhaseTrajectory* apriori_out) {
  grid.validate();
  if (data.size() < 2) {
    throw std::invalid_argument("learn_tolerance: need at least two samples");
  }
  const std::size_t n_steps = data.size() - 1;  // consumed samples 0..N-1, losses 1..N
  const Eigen::MatrixXd& C = model.measurement_matrix();

  struct Candidate {
    double c;
    RobustEkf filter;
    double loss_sum = 0.0;
    bool alive = true;
  };

  std::vector<Candidate> bank;
  bank.reserve(grid.values.size());
  for (double c : grid.values) {
    FilterConfig cfg = base_cfg;
    cfg.tolerance = c;
    bank.push_back({c, RobustEkf(model, cfg, init), 0.0, true});
  }

  FilterConfig apriori_cfg = base_cfg;
  apriori_cfg.tolerance = a_priori_c;
  PhaseTrajectory apriori = run_phase(data.first(n_steps), model, apriori_cfg, init);

  Eigen::VectorXd u(6);
  for (std::size_t k = 0; k <= n_steps; ++k) {
    const SyncedSample& s = data[k];
    u << s.imu.omega_m, s.imu.a_m;
    for (Candidate& cand : bank) {
      if (!cand.alive) {
        continue;
      }
      if (k >= 1) {
        cand.loss_sum += (s.meas.y - C * cand.filter.belief().x_hat).squaredNorm();
      }
      if (k < n_steps) {
        try {
          cand.filter.step(u, s.meas.y);
        } catch (const NumericalError& e) {
          std::cerr << "learn_tolerance: dropping candidate c = " << cand.c << " ("
                    << e.what() << ")\n";
          cand.alive = false;
        }
      }
    }
  }

  LearnReport report;
  report.n = n_steps;
  report.grid = grid.values;
  report.losses.resize(bank.size(), std::numeric_limits<double>::infinity());
  report.survived.resize(bank.size(), false);

  bool any_alive = false;
  std::size_t best = 0;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    if (!bank[i].alive) {
      continue;
    }
    report.losses[i] = bank[i].loss_sum / static_cast<double>(n_steps);
    report.survived[i] = true;
    if (!any_alive || report.losses[i] < report.losses[best]) {
      best = i;
      any_alive = true;
    }
  }
  if (!any_alive) {
    throw NumericalError("learn_tolerance: every candidate filter aborted");
  }
  report.c_hat = grid.values[best];

  if (apriori_out != nullptr) {
    *apriori_out = std::move(apriori);
  }
  return report;
}

}  // namespace robnav
