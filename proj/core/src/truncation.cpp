#include "hybridnoise/truncation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "hybridnoise/detail/compensated.hpp"
#include "hybridnoise/errors.hpp"

namespace hybridnoise {

namespace {

constexpr double kReferenceEpsilon = 1e-12;
constexpr double kDensityFloor = 1e-300;
constexpr double kLog2E = 1.4426950408889634073599247;  // 1/ln 2

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Forward scan shared by tail_mass and minimal_components. Returns the first
// order with computed tail <= epsilon, or max_order if the scan saturates.
struct ScanResult {
  int order;
  bool saturated;
};

ScanResult scan_to_tail(const PoissonParams& p, double epsilon,
                        long long max_order) {
  detail::CompensatedSum acc;
  double prev_tail = 2.0;  // above any valid tail
  for (long long i = 0;; ++i) {
    acc.add(poisson_weight(p, static_cast<int>(i)));
    const double tail = clamp01(acc.subtracted_from(1.0));
    if (tail <= epsilon) return {static_cast<int>(i), false};
    if (max_order >= 0 && i >= max_order) return {static_cast<int>(i), true};
    // Past the mode the computed tail can only shrink; once it stops
    // changing, double precision is exhausted and no larger order helps.
    if (i > p.lambda && tail == prev_tail) return {static_cast<int>(i), true};
    prev_tail = tail;
  }
}

}  // namespace

double tail_mass(const PoissonParams& p, int order) {
  if (order < 0) throw std::invalid_argument("order: must be >= 0");
  detail::CompensatedSum acc;
  for (int i = 0; i <= order; ++i) acc.add(poisson_weight(p, i));
  return clamp01(acc.subtracted_from(1.0));
}

int minimal_components(const PoissonParams& p, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon: must be in (0, 1)");
  return scan_to_tail(p, epsilon, -1).order;
}

ApproximationReport approximation_report(const GaussianParams& g,
                                         const PoissonParams& p, int order,
                                         const Domain& domain,
                                         const AdequacyThresholds& thresholds) {
  if (order < 0) throw std::invalid_argument("order: must be >= 0");

  const double cap =
      p.lambda + 40.0 * std::sqrt(p.lambda + 1.0) + 60.0;
  const ScanResult ref = scan_to_tail(p, kReferenceEpsilon,
                                      static_cast<long long>(cap));
  const int reference_order = std::max(ref.order, order);

  const HybridMixture test = build_mixture(g, p, order);
  const HybridMixture reference = build_mixture(g, p, reference_order);
  const HybridMixture test_norm = renormalize(test);
  const HybridMixture ref_norm = renormalize(reference);

  const std::vector<double> z = domain.points();
  const double h = domain.step();

  double sup = 0.0;
  double peak = 0.0;
  detail::CompensatedSum l1, kl;
  double prev_gap = 0.0;
  double prev_kl = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double f_ref = mixture_pdf(reference, z[k]);
    const double f_test = mixture_pdf(test, z[k]);
    const double gap = std::abs(f_ref - f_test);
    sup = std::max(sup, gap);
    peak = std::max(peak, f_ref);

    double kl_term = 0.0;
    const double pr = mixture_pdf(ref_norm, z[k]);
    if (pr >= kDensityFloor) {
      const double qr = std::max(mixture_pdf(test_norm, z[k]), kDensityFloor);
      kl_term = pr * std::log(pr / qr) * kLog2E;
    }
    if (k > 0) {
      l1.add(0.5 * h * (prev_gap + gap));
      kl.add(0.5 * h * (prev_kl + kl_term));
    }
    prev_gap = gap;
    prev_kl = kl_term;
  }

  ApproximationReport report;
  report.lambda = p.lambda;
  report.order = order;
  report.tail_mass = tail_mass(p, order);
  report.sup_norm = sup;
  report.l1_distance = l1.value();
  report.kl_divergence = kl.value();
  report.reference_order = reference_order;
  report.reference_cap_hit = ref.saturated;
  report.adequate = report.tail_mass <= thresholds.tail_mass &&
                    report.sup_norm <= thresholds.sup_norm_rel * peak;
  return report;
}

SweepResult adequacy_sweep(const GaussianParams& g, std::vector<double> lambdas,
                           std::vector<int> orders,
                           const DomainRule& domain_rule,
                           const AdequacyThresholds& thresholds,
                           unsigned max_threads) {
  if (lambdas.empty()) throw std::invalid_argument("lambdas: must be nonempty");
  if (orders.empty()) throw std::invalid_argument("orders: must be nonempty");
  std::sort(lambdas.begin(), lambdas.end());
  std::sort(orders.begin(), orders.end());
  for (double lam : lambdas) (void)PoissonParams(lam);
  for (int r : orders)
    if (r < 0) throw std::invalid_argument("orders: must be >= 0");

  struct Cell {
    double lambda;
    int order;
  };
  std::vector<Cell> cells;
  cells.reserve(lambdas.size() * orders.size());
  for (double lam : lambdas)
    for (int r : orders) cells.push_back({lam, r});

  SweepResult result;
  result.thresholds = thresholds;
  result.rows.resize(cells.size());
  std::vector<std::string> failures(cells.size());

  auto run_cell = [&](std::size_t idx) {
    const Cell& c = cells[idx];
    try {
      const PoissonParams p(c.lambda);
      const Domain d = domain_rule ? domain_rule(g, c.order)
                                   : Domain::spanning(g, c.order);
      result.rows[idx] = approximation_report(g, p, c.order, d, thresholds);
    } catch (const std::exception& e) {
      failures[idx] = "sweep cell (lambda=" + std::to_string(c.lambda) +
                      ", order=" + std::to_string(c.order) + "): " + e.what();
    }
  };

  unsigned want = max_threads == 0 ? std::thread::hardware_concurrency()
                                   : max_threads;
  want = std::max(1u, std::min<unsigned>(want, cells.size()));

  if (want == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned t = 0; t < want; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1))
          run_cell(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const std::string& f : failures)
    if (!f.empty()) throw std::runtime_error(f);
  return result;
}

}  // namespace hybridnoise
