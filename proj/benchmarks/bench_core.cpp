#include <benchmark/benchmark.h>

#include <random>

#include "imann/harness.hpp"

namespace {

using namespace imann;

void BM_GaussLegendreRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_legendre_rule(n));
  }
}
BENCHMARK(BM_GaussLegendreRule)->Arg(16)->Arg(80)->Arg(256);

void BM_ErrorIntegral2D(benchmark::State& state) {
  const ModelFormulation& f9 = find_formulation("f9");
  const RealFunction zero = [](std::span<const double>) { return 0.0; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        error_integral(f9.target.evaluate, zero, f9.domain(), 80));
  }
}
BENCHMARK(BM_ErrorIntegral2D);

void BM_HybridObjective(benchmark::State& state) {
  const ModelFormulation& f9 = find_formulation("f9");
  const NetworkSpec spec{2, {5, 5}, 2};
  const Dataset data = build_dataset(f9, static_cast<int>(state.range(0)));
  const auto objective = objective_for(spec, f9, data);

  std::mt19937_64 engine(1);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::vector<double> w(static_cast<std::size_t>(dimensionality(spec)));
  for (double& v : w) v = dist(engine);

  for (auto _ : state) {
    benchmark::DoNotOptimize(objective(w));
  }
}
BENCHMARK(BM_HybridObjective)->Arg(16)->Arg(256);

void BM_CmaesGeneration(benchmark::State& state) {
  const auto sphere = [](std::span<const double> w) {
    double sum = 0.0;
    for (double v : w) sum += v * v;
    return sum;
  };
  CmaConfig config;
  config.dimension = 47;
  config.max_evaluations = 1000000000;
  config.seed = 7;
  CmaState cma(config);
  std::vector<double> fits;
  for (auto _ : state) {
    const auto candidates = cma.ask();
    fits.resize(candidates.size());
    for (std::size_t k = 0; k < candidates.size(); ++k) fits[k] = sphere(candidates[k]);
    cma.tell(candidates, fits);
  }
}
BENCHMARK(BM_CmaesGeneration);

void BM_DnnEpoch(benchmark::State& state) {
  const ModelFormulation& f9 = find_formulation("f9");
  const DnnSpec spec = parse_dnn_architecture("2-32-32-16-1");
  const Dataset data = build_dataset(f9, 256);
  std::vector<double> w = init_dnn_weights(spec, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dnn_gradient(spec, w, data));
  }
}
BENCHMARK(BM_DnnEpoch);

}  // namespace

BENCHMARK_MAIN();
