#include "hybridnoise/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hybridnoise/errors.hpp"

namespace hybridnoise {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t task_index) {
  // splitmix64 finalizer applied to seed + golden-ratio stride per task.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (task_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int sample_poisson(const PoissonParams& p, RngStream& stream) {
  if (p.lambda > kMaxSamplingRate)
    throw UnsupportedRateError("lambda: sampling supports rates <= " +
                               std::to_string(kMaxSamplingRate));
  const double u = stream.uniform();
  if (p.lambda == 0.0) return 0;

  const int mode = static_cast<int>(p.lambda);
  const double p_mode = poisson_weight(p, mode);
  double acc = p_mode;
  if (u < acc) return mode;

  // Scan outward from the mode, alternating up/down; pmf ratios are exact
  // recurrences. The mass not covered by the scan underflows long before the
  // window is exhausted.
  int lo = mode, hi = mode;
  double p_lo = p_mode, p_hi = p_mode;
  while (lo > 0 || p_hi > 0.0) {
    p_hi *= p.lambda / (hi + 1);
    ++hi;
    acc += p_hi;
    if (u < acc) return hi;
    if (lo > 0) {
      p_lo *= lo / p.lambda;
      --lo;
      acc += p_lo;
      if (u < acc) return lo;
    }
  }
  return hi;  // u fell in the rounding sliver past all representable mass
}

SampleBatch sample_hybrid(const GaussianParams& g, const PoissonParams& p,
                          long long count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("count: must be >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.lambda = p.lambda;
  batch.gaussian = g;
  batch.count = count;
  batch.values.reserve(static_cast<std::size_t>(count));
  RngStream stream(seed);
  for (long long i = 0; i < count; ++i) {
    const int k = sample_poisson(p, stream);
    batch.values.push_back(k + stream.gaussian(g.mean, g.sd));
  }
  return batch;
}

GofReport ks_test(const SampleBatch& batch, const HybridMixture& m) {
  if (batch.count < 50 ||
      batch.values.size() != static_cast<std::size_t>(batch.count))
    throw std::invalid_argument("batch: needs at least 50 values");
  if (batch.lambda != m.poisson.lambda || !(batch.gaussian == m.gaussian))
    throw BatchMismatchError(
        "ks_test: batch and mixture parameters disagree");
  if (std::abs(m.total_weight - 1.0) > 1e-9)
    throw std::invalid_argument("ks_test: mixture must be renormalized");

  std::vector<double> sorted(batch.values);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = mixture_cdf(m, sorted[i]);
    const double below = f - static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n - f;
    d = std::max({d, below, above});
  }

  GofReport report;
  report.ks_statistic = d;
  report.sample_count = batch.count;
  report.critical_value_5pct = 1.358 / std::sqrt(n);
  report.pass = report.ks_statistic <= report.critical_value_5pct;
  return report;
}

}  // namespace hybridnoise
