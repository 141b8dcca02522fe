#include <benchmark/benchmark.h>

#include <cmath>

#include "ebcs/eb.hpp"
#include "ebcs/kernel.hpp"
#include "ebcs/matrix.hpp"
#include "ebcs/streams.hpp"
#include "ebcs/trackers.hpp"

namespace {

void BM_Erf(benchmark::State& state) {
  double z = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ebcs::erf(z));
    z = z > 6.0 ? -6.0 : z + 0.0137;
  }
}
BENCHMARK(BM_Erf);

void BM_LogMixtureIntegral(benchmark::State& state) {
  const double v = static_cast<double>(state.range(0));
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ebcs::log_mixture_integral(y, v));
    y = y > 10.0 * v ? 0.0 : y + 0.37;
  }
}
BENCHMARK(BM_LogMixtureIntegral)->Arg(10)->Arg(1000)->Arg(100000);

void BM_SolveRadius(benchmark::State& state) {
  const double v = static_cast<double>(state.range(0));
  const double log_g = std::log(2.0 / 0.05) + ebcs::log_mixture_integral(0.0, v).log_magnitude;
  for (auto _ : state) benchmark::DoNotOptimize(ebcs::solve_radius(v, log_g));
}
BENCHMARK(BM_SolveRadius)->Arg(10)->Arg(1000)->Arg(100000);

void BM_TrackerStep(benchmark::State& state) {
  const auto method = static_cast<ebcs::Method>(state.range(0));
  ebcs::MethodParams params;
  params.sigma = 0.5;
  const auto xs = ebcs::sample_path(ebcs::DistributionSpec::parse("bernoulli:0.5"), 1 << 16, 1).x;
  auto tracker = ebcs::make_tracker(method, params);
  std::size_t i = 0;
  for (auto _ : state) {
    tracker->update(xs[i++ & 0xffff]);
    benchmark::DoNotOptimize(tracker->interval());
  }
  state.SetLabel(ebcs::to_string(method));
}
BENCHMARK(BM_TrackerStep)->DenseRange(0, 7);

void BM_Jacobi(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  ebcs::MatrixGenerator gen(ebcs::MatrixGenSpec::parse("rotated-beta", d), 3);
  const ebcs::SymMatrix a = gen.next();
  for (auto _ : state) benchmark::DoNotOptimize(ebcs::sym_eig(a));
}
BENCHMARK(BM_Jacobi)->Arg(3)->Arg(10)->Arg(32);

void BM_MatrixEbStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  ebcs::MatrixEbConfig config;
  config.d = d;
  ebcs::MatrixGenerator gen(ebcs::MatrixGenSpec::parse("rotated-beta", d), 4);
  auto s = ebcs::new_matrix_state(config);
  for (auto _ : state) ebcs::matrix_update_in_place(s, config, gen.next());
}
BENCHMARK(BM_MatrixEbStep)->Arg(3)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
