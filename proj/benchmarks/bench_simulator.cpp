#include <benchmark/benchmark.h>

#include "robnav/simulator.hpp"

namespace {

void BM_SimulateFlight(benchmark::State& state) {
  const robnav::TrajectoryPlan plan = robnav::default_circuit_plan();
  const robnav::NoiseConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(robnav::simulate_flight(plan, cfg, {}, 1));
  }
}
BENCHMARK(BM_SimulateFlight);

void BM_PlanKinematics(benchmark::State& state) {
  const robnav::TrajectoryPlan plan = robnav::default_circuit_plan();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(robnav::plan_kinematics(plan, t));
    t += 0.02;
    if (t > 106.0) {
      t = 0.0;
    }
  }
}
BENCHMARK(BM_PlanKinematics);

}  // namespace
