#include <benchmark/benchmark.h>

#include <random>

#include "cams/decision_support.hpp"
#include "cams/knapsack.hpp"
#include "cams/logging.hpp"
#include "cams/scenario_io.hpp"
#include "cams/sim_engine.hpp"
#include "cams/validation/problems.hpp"

using namespace cams;

static void BM_SolveHorizon(benchmark::State& state) {
  auto p = validation::case_study_horizon_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dss::solve_horizon(p));
}
BENCHMARK(BM_SolveHorizon)->Arg(1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_KnapsackSigmoid(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto instance = validation::random_knapsack_instance(rng);
  for (auto _ : state) benchmark::DoNotOptimize(dss::knapsack_sigmoid(instance.items, instance.budget));
}
BENCHMARK(BM_KnapsackSigmoid)->Unit(benchmark::kMicrosecond);

static void BM_RunCase(benchmark::State& state) {
  logger().set_level(spdlog::level::err);
  const char* file = state.range(0) == 1 ? "/case1.scn" : "/case2.scn";
  const auto s = io::load_scenario(std::string(CAMS_SCENARIO_DIR) + file);
  for (auto _ : state) benchmark::DoNotOptimize(sim::run(s));
}
BENCHMARK(BM_RunCase)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
