#pragma once

#include <cstddef>
#include <vector>

namespace hybridnoise {

/// Parameters of the classical AWGN component Z2.
struct GaussianParams {
  double mean = 0.0;
  double sd = 1.0;

  GaussianParams() = default;
  /// Throws std::invalid_argument unless both values are finite and sd > 0
  /// (sd = 0 would degenerate the mixture into a Dirac comb with no density).
  GaussianParams(double mean, double sd);

  friend bool operator==(const GaussianParams&, const GaussianParams&) = default;
};

/// Rate parameter of the quantum Poisson component Z1.
struct PoissonParams {
  double lambda = 0.0;

  PoissonParams() = default;
  /// Throws std::invalid_argument unless lambda is finite and >= 0.
  /// lambda = 0 is valid and degenerates to a pure Gaussian.
  explicit PoissonParams(double lambda);

  friend bool operator==(const PoissonParams&, const PoissonParams&) = default;
};

/// Evaluation interval with a uniform grid. The noise density lives on all of
/// R; this is the deterministic finite window used for grids and quadrature.
struct Domain {
  double lo = 0.0;
  double hi = 1.0;
  int grid_points = 4096;

  Domain() = default;
  /// Throws std::invalid_argument unless lo < hi (finite) and grid_points >= 2.
  Domain(double lo, double hi, int grid_points = 4096);

  /// Default window [mean - 12 sd, order + mean + 12 sd]. Every retained
  /// component keeps all but < 1e-30 of its mass inside it.
  static Domain spanning(const GaussianParams& g, int order,
                         int grid_points = 4096);

  double step() const { return (hi - lo) / (grid_points - 1); }
  /// Uniform grid including both endpoints.
  std::vector<double> points() const;
};

/// Truncated Poisson-weighted Gaussian mixture: components i = 0..order with
/// mean i + gaussian.mean, common sd, and weight e^-lambda lambda^i / i!.
///
/// Weights are stored raw (sub-unity): the retained mass total_weight is
/// itself a quantity under study, so renormalization is a separate, explicit
/// operation. Component means are implied by the integer shift structure and
/// computed on demand, which keeps the unit spacing exact for every
/// gaussian.mean (storing i + mean as doubles does not: for mean = 0.1,
/// fl(4.1) - fl(3.1) != 1).
///
/// Values are immutable after construction; all operations on them are pure
/// and safe to call concurrently.
struct HybridMixture {
  GaussianParams gaussian;
  PoissonParams poisson;
  int order = 0;
  std::vector<double> weights;  // size order + 1
  double total_weight = 0.0;    // compensated sum of weights

  double component_mean(int i) const { return gaussian.mean + i; }
  std::vector<double> component_means() const;
};

/// First two moments of a mixture.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Poisson probability e^-lambda lambda^i / i!, evaluated in log space via
/// log-gamma so that large i and large lambda never overflow. Exact at
/// lambda = 0 (1 for i = 0, else 0). Throws std::invalid_argument for i < 0.
double poisson_weight(const PoissonParams& p, int i);

/// Gaussian density with mean shift + g.mean and sd g.sd evaluated at z.
double gaussian_pdf(const GaussianParams& g, int shift, double z);

/// Builds the truncated mixture of the given order (order >= 0, else
/// std::invalid_argument). total_weight uses compensated summation.
HybridMixture build_mixture(const GaussianParams& g, const PoissonParams& p,
                            int order);

/// sum_i w_i N(z; i + mean, sd^2). Nonnegative everywhere; cost linear in
/// order + 1.
double mixture_pdf(const HybridMixture& m, double z);

/// sum_i w_i Phi((z - i - mean)/sd). Monotone nondecreasing in z with limits
/// 0 and total_weight.
double mixture_cdf(const HybridMixture& m, double z);

/// Standard normal CDF via the complementary error function
/// (absolute error well below 1e-14).
double standard_normal_cdf(double x);

/// Mean and variance of the mixture. With renormalized = true (the default)
/// these are the moments of the probability density f/W; as the order grows
/// they converge to (lambda + mean, lambda + sd^2). Throws
/// DegenerateMixtureError if renormalization is requested with zero retained
/// weight. With renormalized = false the raw weighted sums are returned
/// (moments of the unnormalized measure).
Moments moments(const HybridMixture& m, bool renormalized = true);

/// Scales all weights by 1/total_weight so the mixture is an exact density
/// (new total_weight equals 1 within 1e-15). Throws DegenerateMixtureError
/// when total_weight is zero.
HybridMixture renormalize(const HybridMixture& m);

}  // namespace hybridnoise
