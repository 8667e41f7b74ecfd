#include "hybridnoise/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hybridnoise/errors.hpp"
#include "hybridnoise/rng.hpp"

namespace hybridnoise {

namespace {

constexpr double kDensityFloor = 1e-300;
constexpr double kLog2E = 1.4426950408889634073599247;
constexpr double kTwoPiE = 17.0794684453471341309271017;  // 2 pi e

void check_tail(const HybridMixture& m, bool override_tail_check) {
  if (m.total_weight <= 0.0)
    throw DegenerateMixtureError("entropy: zero retained weight");
  const double tail = std::clamp(1.0 - m.total_weight, 0.0, 1.0);
  if (!override_tail_check && tail > kEntropyTailThreshold)
    throw TruncationInadequateError(tail, kEntropyTailThreshold);
}

double half_log2(double x) { return 0.5 * std::log(x) * kLog2E; }

}  // namespace

EntropyEstimate entropy_quadrature(const HybridMixture& m, const Domain& domain,
                                   const QuadratureOptions& opts,
                                   bool override_tail_check) {
  check_tail(m, override_tail_check);
  const HybridMixture q = renormalize(m);

  auto integrand = [&q](double z) {
    const double f = mixture_pdf(q, z);
    if (f < kDensityFloor) return 0.0;
    return -f * std::log(f) * kLog2E;
  };

  std::vector<double> breakpoints;
  breakpoints.reserve(q.weights.size());
  for (int i = 0; i <= q.order; ++i) breakpoints.push_back(q.component_mean(i));

  const QuadratureResult r =
      integrate_adaptive(integrand, domain.lo, domain.hi, breakpoints, opts);
  if (!r.converged) throw QuadratureFailureError(r.value, r.error_bound);
  return EntropyEstimate{r.value, EntropyMethod::quadrature, r.error_bound, 0};
}

EntropyEstimate entropy_monte_carlo(const HybridMixture& m, long long n,
                                    std::uint64_t seed,
                                    bool override_tail_check) {
  if (n < 100) throw std::invalid_argument("n: must be >= 100");
  check_tail(m, override_tail_check);
  const HybridMixture q = renormalize(m);

  // Inclusive prefix sums for discrete inversion; the last entry is forced
  // to 1 so every uniform lands on a component.
  std::vector<double> cumulative(q.weights.size());
  double run = 0.0;
  for (std::size_t i = 0; i < q.weights.size(); ++i) {
    run += q.weights[i];
    cumulative[i] = run;
  }
  cumulative.back() = 1.0;

  RngStream stream(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (long long j = 0; j < n; ++j) {
    const double u = stream.uniform();
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const int idx = static_cast<int>(it - cumulative.begin());
    const double z =
        stream.gaussian(q.component_mean(idx), q.gaussian.sd);
    const double f = std::max(mixture_pdf(q, z), kDensityFloor);
    const double y = -std::log(f) * kLog2E;
    // Welford running moments
    const double delta = y - mean;
    mean += delta / static_cast<double>(j + 1);
    m2 += delta * (y - mean);
  }
  const double sample_var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  const double se = std::sqrt(sample_var / static_cast<double>(n));
  return EntropyEstimate{mean, EntropyMethod::monte_carlo, se, n};
}

EntropyBounds entropy_bounds(const HybridMixture& m) {
  if (m.total_weight <= 0.0)
    throw DegenerateMixtureError("entropy_bounds: zero retained weight");
  const double sd2 = m.gaussian.sd * m.gaussian.sd;
  const double var = moments(m, true).variance;
  return EntropyBounds{half_log2(kTwoPiE * sd2),
                       half_log2(kTwoPiE * std::max(var, sd2))};
}

}  // namespace hybridnoise
