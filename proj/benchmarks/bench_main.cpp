#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "tsbound/bounds.hpp"
#include "tsbound/capacity.hpp"
#include "tsbound/econ.hpp"
#include "tsbound/lambert.hpp"
#include "tsbound/statespace.hpp"
#include "tsbound/volatility.hpp"

using namespace tsbound;

namespace {

void BM_LambertWm1(benchmark::State& state) {
  double x = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w_minus1(x));
    x = x < -1e-6 ? x * 0.999 : -0.3;
  }
}
BENCHMARK(BM_LambertWm1);

void BM_RiskBound(benchmark::State& state) {
  BoundInputs in;
  in.plan = make_plan(11853, 2, 11, 538, MixingProfile::table({{8, 0.017}, {9, 0.0}}));
  in.vcd = 3;
  in.moment_m = std::sqrt(2.0);
  in.train_err = 3.333;
  in.delta_d = 2.73;
  for (auto _ : state) benchmark::DoNotOptimize(risk_bound(in).total_bound);
}
BENCHMARK(BM_RiskBound);

void BM_ChooseBlocks(benchmark::State& state) {
  const auto profile = MixingProfile::exponential(1.0, 0.1, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(choose_blocks(state.range(0), 2, profile, 0.15, 3, 1.0).mu);
}
BENCHMARK(BM_ChooseBlocks)->Arg(1000)->Arg(12000);

void BM_KalmanSv(benchmark::State& state) {
  const SvParams p{-9.0, 0.95, 0.05};
  const LinearizedReturns lin = linearize_returns(simulate_sv_returns(p, static_cast<std::size_t>(state.range(0)), 3));
  const StateSpaceModel model = sv_to_statespace(p);
  for (auto _ : state) benchmark::DoNotOptimize(kalman_filter(model, lin.log_squared).neg_loglik);
}
BENCHMARK(BM_KalmanSv)->Arg(1000)->Arg(10000);

void BM_HpFilter(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  std::vector<double> walk(static_cast<std::size_t>(state.range(0)));
  double acc = 0.0;
  for (auto& v : walk) v = (acc += z(rng));
  for (auto _ : state) benchmark::DoNotOptimize(hp_filter(walk, 1600.0).back());
}
BENCHMARK(BM_HpFilter)->Arg(200)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
