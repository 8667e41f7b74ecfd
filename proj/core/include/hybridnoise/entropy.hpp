#pragma once

#include <cstdint>

#include "hybridnoise/mixture.hpp"
#include "hybridnoise/quadrature.hpp"

namespace hybridnoise {

enum class EntropyMethod { quadrature, monte_carlo };

/// Differential entropy estimate in bits. For quadrature, error is the
/// accumulated tolerance bound and sample_count is 0; for Monte Carlo, error
/// is the standard error of the mean over sample_count draws.
struct EntropyEstimate {
  double value_bits = 0.0;
  EntropyMethod method = EntropyMethod::quadrature;
  double error = 0.0;
  long long sample_count = 0;
};

/// Entropy bounds in bits: the Gaussian component entropy from below
/// (conditioning on the Poisson index cannot increase entropy) and the
/// max-entropy Gaussian at the renormalized mixture variance from above.
struct EntropyBounds {
  double lower_bits = 0.0;
  double upper_bits = 0.0;
};

/// Largest tail mass for which entropy of the renormalized truncation is
/// accepted as the noise entropy without an explicit override.
inline constexpr double kEntropyTailThreshold = 0.02;

/// -integral of f log2 f for the RENORMALIZED mixture over the domain, by
/// adaptive subdivision with component means as initial breakpoints. The
/// integrand is taken as 0 wherever the density is below 1e-300 (the
/// x log x -> 0 limit). Throws TruncationInadequateError when the mixture
/// discards more than kEntropyTailThreshold of its mass and no override is
/// given; throws QuadratureFailureError (carrying the best estimate) on
/// non-convergence.
EntropyEstimate entropy_quadrature(const HybridMixture& m, const Domain& domain,
                                   const QuadratureOptions& opts = {},
                                   bool override_tail_check = false);

/// Plain Monte Carlo estimate from n >= 100 variates of the renormalized
/// mixture (component index by discrete inversion over the weights, then a
/// Gaussian offset). Identical (seed, n, mixture) give bitwise-identical
/// results. Same tail-mass precondition as the quadrature path.
EntropyEstimate entropy_monte_carlo(const HybridMixture& m, long long n,
                                    std::uint64_t seed,
                                    bool override_tail_check = false);

/// Sandwich bounds; lower <= upper always, with equality only at lambda = 0.
EntropyBounds entropy_bounds(const HybridMixture& m);

/// Differential entropy is reported in bits; multiply by ln 2 for nats.
constexpr double bits_to_nats(double bits) {
  return bits * 0.6931471805599453094172321;
}

}  // namespace hybridnoise
