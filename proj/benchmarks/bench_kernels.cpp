#include <benchmark/benchmark.h>

#include <vector>

#include "socnav/baselines.hpp"
#include "socnav/env.hpp"
#include "socnav/lidar.hpp"

namespace {

using namespace socnav;

std::vector<Circle> scene_circles() {
  return {{{2.0, 0.5}, 0.4}, {{-1.5, 2.0}, 0.6}, {{0.5, -3.0}, 0.3},
          {{3.5, 3.0}, 0.3}, {{-3.0, -1.0}, 0.3}, {{1.0, 1.5}, 0.3}};
}

void BM_CastScan(benchmark::State& state) {
  const auto circles = scene_circles();
  const Pose2 ego{{0.1, -0.2}, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(cast_scan(ego, circles));
}
BENCHMARK(BM_CastScan);

void BM_Reproject(benchmark::State& state) {
  const auto circles = scene_circles();
  const LidarScan old = cast_scan(Pose2{{0.0, 0.0}, 0.0}, circles);
  const Pose2 now{{0.1, 0.02}, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(reproject_scan(old, now));
}
BENCHMARK(BM_Reproject);

void BM_BuildObservation(benchmark::State& state) {
  const auto circles = scene_circles();
  ScanStack stack;
  Pose2 pose{{0.0, 0.0}, 0.0};
  stack.reset(cast_scan(pose, circles));
  for (std::size_t k = 0; k < kStackDepth; ++k) {
    pose = step_differential(pose, {0.5, 0.3}, 0.2);
    stack.push(cast_scan(pose, circles));
  }
  for (auto _ : state) benchmark::DoNotOptimize(build_observation(stack, pose));
}
BENCHMARK(BM_BuildObservation);

void BM_OrcaVelocity(benchmark::State& state) {
  const AgentDisc self{{0.0, 0.0}, {1.0, 0.0}, 0.3, 1.0};
  const std::vector<AgentDisc> others{{{1.5, 0.2}, {-1.0, 0.0}, 0.3, 1.0},
                                      {{0.5, 1.2}, {0.0, -1.0}, 0.3, 1.0},
                                      {{-1.0, -1.0}, {0.7, 0.7}, 0.3, 1.0},
                                      {{2.5, -0.8}, {-0.5, 0.5}, 0.3, 1.0}};
  const std::vector<Circle> obstacles{{{1.0, -0.9}, 0.5}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(orca_velocity(self, others, obstacles, {1.0, 0.0}, OrcaParams{}));
  }
}
BENCHMARK(BM_OrcaVelocity);

void BM_DwaPlan(benchmark::State& state) {
  std::vector<MovingCircle> bodies;
  for (const Circle& c : scene_circles()) bodies.push_back({c, {-0.3, 0.2}});
  const Pose2 ego{{-3.0, 0.0}, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dwa_plan(ego, {0.5, 0.0}, 0.3, {4.0, 0.0}, bodies, DwaParams{}, KinematicLimits{}));
  }
}
BENCHMARK(BM_DwaPlan);

void BM_EnvStep(benchmark::State& state) {
  Environment env(ScenarioConfig{});
  std::uint64_t seed = 0;
  env.reset(seed);
  for (auto _ : state) {
    if (env.terminal() != Terminal::none) {
      state.PauseTiming();
      env.reset(++seed);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(env.step({0.4, 0.1}));
  }
}
BENCHMARK(BM_EnvStep);

}  // namespace
BENCHMARK_MAIN();
