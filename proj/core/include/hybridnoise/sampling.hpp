#pragma once

#include <cstdint>
#include <vector>

#include "hybridnoise/mixture.hpp"
#include "hybridnoise/rng.hpp"

namespace hybridnoise {

/// Reproducible batch of hybrid noise variates Z = Z1 + Z2. Regenerating with
/// the stored (seed, parameters, count) yields the same values bit for bit.
struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  GaussianParams gaussian;
  long long count = 0;
};

/// Kolmogorov-Smirnov comparison of a batch against a mixture CDF.
struct GofReport {
  double ks_statistic = 0.0;
  long long sample_count = 0;
  double critical_value_5pct = 0.0;
  bool pass = false;
};

/// Largest rate the inversion sampler accepts (desk scale).
inline constexpr double kMaxSamplingRate = 1000.0;

/// Poisson draw by cumulative inversion: one uniform, then a sequential scan
/// outward from the mode with the pmf updated by recurrence in ordinary
/// arithmetic (the mode pmf itself comes from log space). Exact for
/// lambda = 0. Throws UnsupportedRateError above kMaxSamplingRate.
int sample_poisson(const PoissonParams& p, RngStream& stream);

/// count variates of Z = Poisson(lambda) + N(mean, sd^2), drawn interleaved
/// from one stream (each variate consumes one Poisson draw then one Gaussian
/// draw). count >= 1.
SampleBatch sample_hybrid(const GaussianParams& g, const PoissonParams& p,
                          long long count, std::uint64_t seed);

/// Two-sided KS test of the batch against a renormalized mixture built from
/// the same (lambda, mean, sd). The 5% critical value is the large-sample
/// approximation 1.358/sqrt(n); batches must hold at least 50 values.
/// Parameter disagreement throws BatchMismatchError.
GofReport ks_test(const SampleBatch& batch, const HybridMixture& m);

}  // namespace hybridnoise
