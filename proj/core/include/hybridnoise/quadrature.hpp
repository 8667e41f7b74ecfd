#pragma once

#include <functional>
#include <vector>

namespace hybridnoise {

struct QuadratureOptions {
  double tol = 1e-9;   // absolute tolerance on the whole integral
  int max_depth = 60;  // maximum bisection depth per panel
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  bool converged = true;
};

/// Adaptive Simpson integration of f over [lo, hi]. The interval is first
/// split at the given interior breakpoints (values outside (lo, hi) are
/// ignored), then each panel is subdivided recursively until its share of the
/// tolerance is met or max_depth is reached. Multi-modal integrands such as
/// mixture densities should pass their component means as breakpoints so no
/// mode hides inside a single panel.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const std::vector<double>& breakpoints = {},
                                    const QuadratureOptions& opts = {});

}  // namespace hybridnoise
