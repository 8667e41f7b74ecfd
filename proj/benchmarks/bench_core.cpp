#include <benchmark/benchmark.h>

#include "hybridnoise/entropy.hpp"
#include "hybridnoise/sampling.hpp"
#include "hybridnoise/truncation.hpp"

using namespace hybridnoise;

namespace {

const GaussianParams kGaussian(0.0, 1.0);

HybridMixture mixture_for(double lambda) {
  const PoissonParams p(lambda);
  return build_mixture(kGaussian, p, minimal_components(p, 1e-12));
}

void bm_build_mixture(benchmark::State& state) {
  const PoissonParams p(static_cast<double>(state.range(0)));
  const int order = minimal_components(p, 1e-12);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_mixture(kGaussian, p, order));
}
BENCHMARK(bm_build_mixture)->Arg(2)->Arg(20)->Arg(200);

void bm_mixture_pdf(benchmark::State& state) {
  const HybridMixture m = mixture_for(static_cast<double>(state.range(0)));
  double z = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixture_pdf(m, z));
    z += 1e-4;
  }
}
BENCHMARK(bm_mixture_pdf)->Arg(2)->Arg(20)->Arg(200);

void bm_mixture_cdf(benchmark::State& state) {
  const HybridMixture m = mixture_for(static_cast<double>(state.range(0)));
  double z = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixture_cdf(m, z));
    z += 1e-4;
  }
}
BENCHMARK(bm_mixture_cdf)->Arg(2)->Arg(20);

void bm_minimal_components(benchmark::State& state) {
  const PoissonParams p(static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(minimal_components(p, 1e-12));
}
BENCHMARK(bm_minimal_components)->Arg(2)->Arg(20)->Arg(200);

void bm_approximation_report(benchmark::State& state) {
  const PoissonParams p(10.0);
  const Domain d = Domain::spanning(kGaussian, 20);
  for (auto _ : state)
    benchmark::DoNotOptimize(approximation_report(kGaussian, p, 20, d));
}
BENCHMARK(bm_approximation_report);

void bm_entropy_quadrature(benchmark::State& state) {
  const HybridMixture m = mixture_for(static_cast<double>(state.range(0)));
  const Domain d = Domain::spanning(kGaussian, m.order);
  for (auto _ : state)
    benchmark::DoNotOptimize(entropy_quadrature(m, d));
}
BENCHMARK(bm_entropy_quadrature)->Arg(2)->Arg(10);

void bm_sample_poisson(benchmark::State& state) {
  const PoissonParams p(static_cast<double>(state.range(0)));
  RngStream stream(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_poisson(p, stream));
}
BENCHMARK(bm_sample_poisson)->Arg(2)->Arg(20)->Arg(200);

void bm_sample_hybrid_1k(benchmark::State& state) {
  const PoissonParams p(10.0);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_hybrid(kGaussian, p, 1000, seed++));
}
BENCHMARK(bm_sample_hybrid_1k);

void bm_ks_test_10k(benchmark::State& state) {
  const PoissonParams p(10.0);
  const HybridMixture m = renormalize(mixture_for(10.0));
  const SampleBatch batch = sample_hybrid(kGaussian, p, 10000, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ks_test(batch, m));
}
BENCHMARK(bm_ks_test_10k);

}  // namespace

BENCHMARK_MAIN();
