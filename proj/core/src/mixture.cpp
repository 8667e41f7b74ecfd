#include "hybridnoise/mixture.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hybridnoise/detail/compensated.hpp"
#include "hybridnoise/errors.hpp"

namespace hybridnoise {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kInvSqrt2 = 0.7071067811865475244008444;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

GaussianParams::GaussianParams(double mean, double sd) : mean(mean), sd(sd) {
  require(std::isfinite(mean), "mean: must be finite");
  require(std::isfinite(sd) && sd > 0.0, "sd: must be finite and > 0");
}

PoissonParams::PoissonParams(double lambda) : lambda(lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0,
          "lambda: must be finite and >= 0");
}

Domain::Domain(double lo, double hi, int grid_points)
    : lo(lo), hi(hi), grid_points(grid_points) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "domain: lo must be < hi and finite");
  require(grid_points >= 2, "grid_points: must be >= 2");
}

Domain Domain::spanning(const GaussianParams& g, int order, int grid_points) {
  require(order >= 0, "order: must be >= 0");
  return Domain(g.mean - 12.0 * g.sd, order + g.mean + 12.0 * g.sd,
                grid_points);
}

std::vector<double> Domain::points() const {
  std::vector<double> z(static_cast<std::size_t>(grid_points));
  const double h = step();
  for (int i = 0; i < grid_points; ++i) z[static_cast<std::size_t>(i)] = lo + h * i;
  z.back() = hi;
  return z;
}

std::vector<double> HybridMixture::component_means() const {
  std::vector<double> mu(weights.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    mu[i] = component_mean(static_cast<int>(i));
  return mu;
}

double poisson_weight(const PoissonParams& p, int i) {
  require(i >= 0, "i: must be >= 0");
  if (p.lambda == 0.0) return i == 0 ? 1.0 : 0.0;
  if (i == 0) return std::exp(-p.lambda);
  return std::exp(i * std::log(p.lambda) - p.lambda -
                  std::lgamma(static_cast<double>(i) + 1.0));
}

double gaussian_pdf(const GaussianParams& g, int shift, double z) {
  const double t = (z - shift - g.mean) / g.sd;
  return kInvSqrt2Pi / g.sd * std::exp(-0.5 * t * t);
}

HybridMixture build_mixture(const GaussianParams& g, const PoissonParams& p,
                            int order) {
  require(order >= 0, "order: must be >= 0");
  HybridMixture m;
  m.gaussian = g;
  m.poisson = p;
  m.order = order;
  m.weights.reserve(static_cast<std::size_t>(order) + 1);
  detail::CompensatedSum total;
  for (int i = 0; i <= order; ++i) {
    const double w = poisson_weight(p, i);
    m.weights.push_back(w);
    total.add(w);
  }
  m.total_weight = total.value();
  return m;
}

double mixture_pdf(const HybridMixture& m, double z) {
  double f = 0.0;
  for (int i = 0; i <= m.order; ++i)
    f += m.weights[static_cast<std::size_t>(i)] * gaussian_pdf(m.gaussian, i, z);
  return f;
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double mixture_cdf(const HybridMixture& m, double z) {
  detail::CompensatedSum acc;
  for (int i = 0; i <= m.order; ++i) {
    const double t = (z - m.component_mean(i)) / m.gaussian.sd;
    acc.add(m.weights[static_cast<std::size_t>(i)] * standard_normal_cdf(t));
  }
  return acc.value();
}

Moments moments(const HybridMixture& m, bool renormalized) {
  if (renormalized && m.total_weight <= 0.0)
    throw DegenerateMixtureError("moments: zero retained weight");
  const double sd2 = m.gaussian.sd * m.gaussian.sd;
  detail::CompensatedSum first, second;
  for (int i = 0; i <= m.order; ++i) {
    const double w = m.weights[static_cast<std::size_t>(i)];
    const double mu = m.component_mean(i);
    first.add(w * mu);
    second.add(w * (sd2 + mu * mu));
  }
  double m1 = first.value();
  double m2 = second.value();
  if (renormalized) {
    m1 /= m.total_weight;
    m2 /= m.total_weight;
  }
  return Moments{m1, m2 - m1 * m1};
}

HybridMixture renormalize(const HybridMixture& m) {
  if (m.total_weight <= 0.0)
    throw DegenerateMixtureError("renormalize: zero retained weight");
  HybridMixture out = m;
  const double inv = 1.0 / m.total_weight;
  detail::CompensatedSum total;
  for (double& w : out.weights) {
    w *= inv;
    total.add(w);
  }
  out.total_weight = total.value();
  return out;
}

}  // namespace hybridnoise
