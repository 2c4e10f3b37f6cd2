// Serial reference vs OpenMP sweep engines on a fixed mid-size grid.

#include "rqf/sweep.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

rqf::SweepConfig grid2() {
  rqf::SweepConfig cfg;
  cfg.n_particles = 2;
  for (int i = 1; i <= 24; ++i) cfg.mass_ratio.push_back(0.04 * i - 0.02);
  for (int i = 0; i <= 20; ++i) cfg.r.push_back(0.1 * i);
  cfg.theta = {0.0, std::numbers::pi / 8.0, std::numbers::pi / 4.0};
  cfg.purity = {{1.0, 1.0}};
  cfg.alpha = {1.0};
  return cfg;
}

rqf::SweepConfig grid3() {
  rqf::SweepConfig cfg;
  cfg.n_particles = 3;
  for (int i = 1; i <= 24; ++i) cfg.mass_ratio.push_back(0.04 * i - 0.02);
  for (int i = 0; i <= 20; ++i) cfg.r.push_back(0.1 * i);
  cfg.theta = {0.0, std::numbers::pi / 4.0};
  return cfg;
}

void BM_sweep2_serial(benchmark::State& state) {
  const auto cfg = grid2();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rqf::run_sweep2_serial(cfg));
  }
}

void BM_sweep2_parallel(benchmark::State& state) {
  const auto cfg = grid2();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rqf::run_sweep2(cfg));
  }
}

void BM_sweep3_serial(benchmark::State& state) {
  const auto cfg = grid3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rqf::run_sweep3_serial(cfg));
  }
}

void BM_sweep3_parallel(benchmark::State& state) {
  const auto cfg = grid3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rqf::run_sweep3(cfg));
  }
}

}  // namespace

BENCHMARK(BM_sweep2_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep2_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep3_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep3_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
