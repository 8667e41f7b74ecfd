#pragma once

#include <functional>
#include <vector>

#include "hybridnoise/mixture.hpp"

namespace hybridnoise {

/// Tolerances deciding whether a truncation "well approximates" the full
/// density. A truncation is adequate when its discarded Poisson mass is at
/// most tail_mass AND the largest pointwise PDF gap against a high-order
/// reference is at most sup_norm_rel times the reference peak.
///
/// The defaults reproduce the published adequacy verdicts for
/// (lambda, order) in {2,5,10,20} x {10,20,30}: the adequate cells reach a
/// relative sup-norm of 0.039 (lambda=20, order=30), the inadequate ones
/// start at 0.71, and tail masses split at 0.0135 vs 0.417.
struct AdequacyThresholds {
  double tail_mass = 0.02;
  double sup_norm_rel = 0.05;

  friend bool operator==(const AdequacyThresholds&,
                         const AdequacyThresholds&) = default;
};

/// Error metrics of one truncated mixture against a high-order reference.
struct ApproximationReport {
  double lambda = 0.0;
  int order = 0;
  double tail_mass = 0.0;      // 1 - sum of retained weights, in [0, 1]
  double sup_norm = 0.0;       // max |f_ref - f_R| on the domain grid
  double l1_distance = 0.0;    // trapezoidal integral of |f_ref - f_R|
  double kl_divergence = 0.0;  // KL(ref || truncated), renormalized, bits
  bool adequate = false;
  int reference_order = 0;
  bool reference_cap_hit = false;  // reference-order search hit its hard cap
};

/// One report per (lambda, order) cell, ordered by (lambda, order).
struct SweepResult {
  std::vector<ApproximationReport> rows;
  AdequacyThresholds thresholds;
};

/// Maps a cell's order to the evaluation window. Defaults to
/// Domain::spanning(g, order) when no rule is supplied.
using DomainRule = std::function<Domain(const GaussianParams&, int order)>;

/// Poisson mass discarded by truncating at the given order:
/// 1 - sum_{i<=order} w_i, computed by compensated forward summation and
/// clamped to [0, 1]. Strictly decreasing in order (for lambda > 0) until it
/// underflows.
double tail_mass(const PoissonParams& p, int order);

/// Smallest order whose tail mass is <= epsilon (0 < epsilon < 1), found by
/// forward summation from i = 0. If epsilon lies below what double precision
/// can resolve (~1e-16), returns the order at which the computed tail stops
/// changing.
int minimal_components(const PoissonParams& p, double epsilon);

/// Compares the truncation of the given order against a reference mixture of
/// order max(minimal_components(p, 1e-12), order) on the domain grid, so a
/// finer truncation is never compared against a coarser reference and
/// order == reference order yields identically zero gaps. The reference
/// search is capped at lambda + 40 sqrt(lambda + 1) + 60; hitting the cap is
/// reported via reference_cap_hit. KL uses the renormalized pair with the
/// integrand forced to 0 wherever the reference density is below 1e-300.
ApproximationReport approximation_report(
    const GaussianParams& g, const PoissonParams& p, int order,
    const Domain& domain, const AdequacyThresholds& thresholds = {});

/// One report per (lambda, order) pair over the cartesian grid, rows ordered
/// by ascending (lambda, order). Cells are pure and may be evaluated in
/// parallel (max_threads = 0 picks the hardware concurrency); the assembled
/// result is identical regardless of schedule. Per-cell failures are
/// rethrown with the offending (lambda, order) named.
SweepResult adequacy_sweep(const GaussianParams& g,
                           std::vector<double> lambdas,
                           std::vector<int> orders,
                           const DomainRule& domain_rule = nullptr,
                           const AdequacyThresholds& thresholds = {},
                           unsigned max_threads = 0);

}  // namespace hybridnoise
