#include <benchmark/benchmark.h>

#include <cmath>

#include "berezin/quadrature.hpp"
#include "berezin/transform.hpp"

using namespace berezin;

namespace {

const Complex kCenter{0.4, -0.2};

Complex log_integrand(Complex zeta) {
  const Complex z{0.3, 0.1};
  const double w = (1.0 - std::norm(z)) / std::norm(1.0 - zeta * std::conj(z));
  return w * w * std::log(std::abs(zeta - kCenter));
}

NodeSet make_nodes(int radial, int angular) {
  QuadratureRule rule;
  rule.radial = radial;
  rule.angular = angular;
  return graded_nodes(kCenter, rule, GradingOptions{});
}

void BM_integrate_parallel(benchmark::State& state) {
  const NodeSet nodes = make_nodes(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(nodes, log_integrand));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(nodes.size()));
}

void BM_integrate_serial(benchmark::State& state) {
  const NodeSet nodes = make_nodes(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_serial(nodes, log_integrand));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(nodes.size()));
}

}  // namespace

BENCHMARK(BM_integrate_parallel)->Args({32, 128})->Args({64, 256})->Args({128, 512})->UseRealTime();
BENCHMARK(BM_integrate_serial)->Args({32, 128})->Args({64, 256})->Args({128, 512})->UseRealTime();

BENCHMARK_MAIN();
