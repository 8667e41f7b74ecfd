#include "hybridnoise/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hybridnoise {

namespace {

struct PanelSums {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson with Richardson extrapolation; the error of the
// refined estimate is |S2 - S1| / 15.
void refine(const std::function<double(double)>& f, double a, double b,
            double fa, double fm, double fb, double whole, double tol,
            int depth, int max_depth, PanelSums& out) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth >= max_depth) {
    out.value += left + right + delta / 15.0;
    out.error += std::abs(delta) / 15.0;
    if (std::abs(delta) > 15.0 * tol) out.converged = false;
    return;
  }
  refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth, out);
  refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const std::vector<double>& breakpoints,
                                    const QuadratureOptions& opts) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("integrate_adaptive: need finite lo < hi");
  if (!(opts.tol > 0.0))
    throw std::invalid_argument("integrate_adaptive: tol must be > 0");

  std::vector<double> edges;
  edges.reserve(breakpoints.size() + 2);
  edges.push_back(lo);
  for (double b : breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const double total = hi - lo;
  PanelSums sums;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k];
    const double b = edges[k + 1];
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    const double panel_tol = opts.tol * ((b - a) / total);
    refine(f, a, b, fa, fm, fb, whole, panel_tol, 0, opts.max_depth, sums);
  }
  return QuadratureResult{sums.value, sums.error, sums.converged};
}

}  // namespace hybridnoise
